"""AST-guided bug injection: operator catalog, site queries, rewrites and composition."""
