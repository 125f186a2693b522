"""Word similarity descriptors."""
