"""pak: exact p-adic arithmetic, the double index on Laurent-log algebras,
projective-line integration, de Rham curvature identities, Green/height
pairing combinators, and global intersection bookkeeping."""

__version__ = "0.1.0"
