"""JSON formats for algebras, extension data and reports."""
