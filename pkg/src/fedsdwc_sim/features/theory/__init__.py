"""Theory feature: numerical check of the OOD generalization bound."""
