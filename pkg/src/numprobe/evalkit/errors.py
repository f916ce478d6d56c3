class EvalError(Exception):
    pass


class DuplicatePrediction(EvalError, ValueError):
    pass


class EmptyGoldSet(EvalError, ValueError):
    pass


class MissingBaseline(EvalError, KeyError):
    def __str__(self) -> str:  # KeyError would repr() the message
        return str(self.args[0]) if self.args else ""


class InsufficientShots(EvalError, ValueError):
    pass
