"""Domain layer (schemas, errors, simulation service, result repository)."""
