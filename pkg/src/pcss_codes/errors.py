class InstanceTooLarge(ValueError):
    """An exhaustive computation was asked for on an instance beyond its size guard."""
