"""Domain value types package."""
