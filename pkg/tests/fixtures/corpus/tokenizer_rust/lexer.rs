use std::collections::HashMap;
use std::fmt;

const MAX_DEPTH: usize = 32;

#[derive(Debug, Clone, PartialEq)]
pub enum Token {
    Number(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
}

pub struct Lexer {
    chars: Vec<char>,
    pos: usize,
    depth: usize,
}

impl Lexer {
    pub fn new(input: &str) -> Self {
        Lexer { chars: input.chars().collect(), pos: 0, depth: 0 }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn read_number(&mut self) -> f64 {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() || c == '.' {
                self.pos += 1;
            } else {
                break;
            }
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse().unwrap_or(0.0)
    }

    fn read_ident(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_alphanumeric() {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    pub fn tokens(&mut self) -> Result<Vec<Token>, String> {
        let mut out = Vec::new();
        while let Some(c) = self.peek() {
            // whitespace separates tokens but is otherwise ignored
            if c.is_whitespace() {
                self.pos += 1;
                continue;
            }
            let token = match c {
                '+' => Token::Plus,
                '-' => Token::Minus,
                '*' => Token::Star,
                '/' => Token::Slash,
                '(' => {
                    self.depth += 1;
                    Token::LParen
                }
                ')' => {
                    if self.depth == 0 {
                        return Err(format!("unbalanced paren at {}", self.pos));
                    }
                    self.depth -= 1;
                    Token::RParen
                }
                _ if c.is_ascii_digit() => {
                    out.push(Token::Number(self.read_number()));
                    continue;
                }
                _ if c.is_alphabetic() => {
                    out.push(Token::Ident(self.read_ident()));
                    continue;
                }
                _ => return Err(format!("unexpected {} at {}", c, self.pos)),
            };
            if self.depth > MAX_DEPTH {
                return Err(String::from("nesting too deep"));
            }
            out.push(token);
            self.pos += 1;
        }
        Ok(out)
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        match self {
            Token::Number(n) => write!(f, "{}", n),
            Token::Ident(s) => write!(f, "{}", s),
            Token::Plus => write!(f, "+"),
            Token::Minus => write!(f, "-"),
            Token::Star => write!(f, "*"),
            Token::Slash => write!(f, "/"),
            Token::LParen => write!(f, "("),
            Token::RParen => write!(f, ")"),
        }
    }
}

pub fn evaluate(tokens: &[Token], vars: &HashMap<String, f64>) -> f64 {
    let mut total = 0.0;
    let mut sign = 1.0;
    for token in tokens {
        match token {
            Token::Number(n) => total = total + sign * n,
            Token::Ident(name) => total += sign * vars.get(name).copied().unwrap_or(0.0),
            Token::Minus => sign = -1.0,
            _ => sign = 1.0,
        }
    }
    total
}

pub fn average(values: &[f64]) -> f64 {
    if values.is_empty() || values.len() > 1000 {
        return 0.0;
    }
    let sum: f64 = values.iter().sum();
    sum / values.len() as f64
}
