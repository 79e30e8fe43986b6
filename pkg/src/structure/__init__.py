"""Structure theory: simplicity, Fitting splitting, maximal ideals and decomposition."""
