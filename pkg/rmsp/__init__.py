"""Reed-Muller recursive list decoding with successive permutations."""

__version__ = "0.1.0"
