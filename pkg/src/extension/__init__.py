"""Double extension of a quadratic Hom-Lie algebra by a Lie algebra."""
