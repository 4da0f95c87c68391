"""Operation, time-step and memory accounting."""
