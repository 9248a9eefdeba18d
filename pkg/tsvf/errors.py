class UndefinedWeakValue(ArithmeticError):
    """Postselected state is orthogonal to the preselected one, so weak values do not exist."""

    def __init__(self, overlap: complex, threshold: float):
        self.overlap = overlap
        self.threshold = threshold
        super().__init__(
            f"Weak values are not defined: |<Phi|Psi>| = {abs(overlap):.3e} "
            f"<= {threshold:.3e} (orthogonal postselection)"
        )
