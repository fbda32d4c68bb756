"""Generation of algebras with unitary involution: exact tools and census."""

__version__ = "0.1.0"
