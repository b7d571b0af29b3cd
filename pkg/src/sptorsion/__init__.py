"""Order-p torsion in Sp(p-1, Z[1/n]): class counts, explicit matrices, centralizers."""

__version__ = "0.1.0"
