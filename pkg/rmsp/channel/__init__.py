"""BPSK over AWGN."""
