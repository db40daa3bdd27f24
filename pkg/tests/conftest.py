"""Test directory marker; sibling helper modules are imported by name."""
