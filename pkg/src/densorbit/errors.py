class NotContainable(ArithmeticError):
    """No cylinder of the requested order fits inside the outer cylinder.

    Raised only when a caller asks for an inner order that is too coarse;
    orders produced by ``min_inner_order`` never trigger it.
    """

    def __init__(self, outer, inner_base, inner_order):
        self.outer = outer
        self.inner_base = inner_base
        self.inner_order = inner_order
        super().__init__(
            f"no base-{inner_base} cylinder of order {inner_order} fits in {outer}"
        )


class CapExceeded(RuntimeError):
    """An enumeration would exceed the caller's budget."""

    def __init__(self, required, cap):
        self.required = required
        self.cap = cap
        super().__init__(f"enumeration needs {required} items, cap is {cap}")


class WitnessFailed(AssertionError):
    """A predicted orbit witness does not match the digits of the point."""

    def __init__(self, k, base, detail=""):
        self.k = k
        self.base = base
        msg = f"witness for step {k} in base {base} does not match"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)
