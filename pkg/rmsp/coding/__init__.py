"""Code construction, GF(2) permutations, SC kernels and leaf list decoders."""
