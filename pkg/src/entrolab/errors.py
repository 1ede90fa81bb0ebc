"""Exception hierarchy.

Input problems (bad syntax, malformed rings or maps) derive from
:class:`InputError`; refusals that are mathematical rather than
user mistakes derive from :class:`MathematicalRefusal`.  The CLI maps
the two families to exit codes 1 and 2.
"""


class EntrolabError(Exception):
    code = "ERROR"

    def payload(self) -> dict:
        return {"code": self.code, "message": str(self)}


class InputError(EntrolabError):
    code = "INPUT_ERROR"


class StructuralError(InputError):
    """Operands live in different rings, or an arity does not match."""

    code = "STRUCTURAL_ERROR"


class ParseError(InputError):
    code = "SYNTAX_ERROR"

    def __init__(self, message, position=None, token_index=None):
        if position is not None:
            message = f"{message} (at column {position})"
        super().__init__(message)
        self.position = position
        self.token_index = token_index

    def payload(self):
        d = super().payload()
        d["position"] = self.position
        d["token_index"] = self.token_index
        return d


class NotLocal(InputError):
    code = "NOT_LOCAL"

    def __init__(self, variable, image):
        super().__init__(f"image of {variable} has a nonzero constant term: {image}")
        self.variable = variable
        self.image = image

    def payload(self):
        d = super().payload()
        d.update(variable=self.variable, image=str(self.image))
        return d


class WellDefinednessFailure(InputError):
    """The map does not send the relation ideal into itself."""

    code = "WELL_DEFINEDNESS_FAILURE"

    def __init__(self, relation, normal_form):
        super().__init__(
            f"relation {relation} is not preserved: its image has normal form {normal_form}"
        )
        self.relation = relation
        self.normal_form = normal_form

    def payload(self):
        d = super().payload()
        d.update(relation=str(self.relation), normal_form=str(self.normal_form))
        return d


class MathematicalRefusal(EntrolabError):
    code = "REFUSED"


class CapacityError(MathematicalRefusal):
    code = "CAPACITY_EXCEEDED"

    def __init__(self, cap, what="standard monomials"):
        super().__init__(f"more than {cap} {what} (cap = {cap})")
        self.cap = cap

    def payload(self):
        d = super().payload()
        d["cap"] = self.cap
        return d


class NotFiniteLength(MathematicalRefusal):
    """The truncation ladder did not stabilize below the cap."""

    code = "NOT_FINITE_LENGTH"

    def __init__(self, message, n=None, ladder=()):
        super().__init__(message)
        self.n = n
        self.ladder = list(ladder)

    def payload(self):
        d = super().payload()
        d["n"] = self.n
        d["ladder"] = [[N, str(L)] for N, L in self.ladder]
        return d


class QUnavailable(MathematicalRefusal):
    code = "Q_UNAVAILABLE"


class InvariantViolation(AssertionError):
    """A proven inequality failed; indicates a bug, never bad input."""
