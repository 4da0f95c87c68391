"""Monte-Carlo plumbing: random streams, ML oracle, per-frame workers."""
