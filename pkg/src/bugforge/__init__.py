"""AST-guided bug injection for repository-level debugging benchmarks."""

__version__ = "0.1.0"
