"""dowling-nested: Dowling lattices, nested set complexes and tree complexes."""

__version__ = "0.1.0"
