'use strict';

const fs = require('fs');
const path = require('path');

const DEFAULT_CURRENCY = 'USD';
const MAX_ENTRIES = 500;

class Ledger {
  constructor(owner, currency) {
    this.owner = owner;
    this.currency = currency || DEFAULT_CURRENCY;
    this.entries = [];
    this.balance = 0;
  }

  record(amount, memo) {
    // reject empty memos and runaway ledgers
    if (memo === '' || this.entries.length >= MAX_ENTRIES) {
      return false;
    }
    const entry = { amount: amount, memo: memo, at: Date.now() };
    this.entries.push(entry);
    this.balance += amount;
    return true;
  }

  refund(index) {
    const entry = this.entries[index];
    if (entry == null) {
      throw new Error('no such entry');
    }
    this.balance -= entry.amount;
    this.entries.splice(index, 1);
    return entry;
  }

  credits() {
    return this.entries.filter((e) => e.amount > 0);
  }

  debits() {
    return this.entries.filter((e) => e.amount < 0);
  }

  average() {
    if (this.entries.length === 0) {
      return 0;
    }
    let total = 0;
    for (const e of this.entries) {
      total += e.amount;
    }
    return total / this.entries.length;
  }

  largest() {
    let best = null;
    for (let i = 0; i < this.entries.length; i++) {
      const e = this.entries[i];
      if (best === null || e.amount > best.amount) {
        best = e;
      }
    }
    return best;
  }

  save(dir) {
    const file = path.join(dir, this.owner + '.json');
    const body = JSON.stringify({ owner: this.owner, entries: this.entries }, null, 2);
    fs.writeFileSync(file, body);
    return file;
  }
}

function convert(amount, rate) {
  const scaled = amount * rate;
  return Math.round(scaled * 100) / 100;
}

function interest(principal, rate, years) {
  let value = principal;
  for (let y = 0; y < years; y++) {
    value = value + value * rate;
  }
  return value - principal;
}

function splitEvenly(total, people) {
  if (people <= 0 || total < 0) {
    return [];
  }
  const share = Math.floor(total / people);
  const shares = new Array(people).fill(share);
  shares[0] += total - share * people;
  return shares;
}

function formatAmount(amount, currency) {
  const sign = amount < 0 ? '-' : '';
  return sign + Math.abs(amount).toFixed(2) + ' ' + currency;
}

module.exports = { Ledger, convert, interest, splitEvenly, formatAmount };
