class AbdkitError(Exception):
    """Base class for every error raised by abdkit."""


class AbdSyntaxError(AbdkitError, ValueError):
    def __init__(self, message: str, lineno: int = 0):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}" if lineno else message)


class ArityError(AbdSyntaxError):
    pass


class UnknownRelationError(AbdSyntaxError):
    pass


class UnassignedVariableError(AbdkitError, KeyError):
    def __init__(self, variable: str):
        self.variable = variable
        super().__init__(f"variable {variable} is not assigned")

    def __str__(self):
        return self.args[0]


class PreconditionError(AbdkitError, ValueError):
    """The input lies outside the region an algorithm is defined for."""


class NotMeaningfulError(AbdkitError, ValueError):
    pass


class OracleLimitExceeded(AbdkitError, RuntimeError):
    def __init__(self, work: int, limit: int):
        self.work = work
        self.limit = limit
        super().__init__(f"brute force needs {work} steps, limit is {limit} (raise ABDKIT_ORACLE_LIMIT)")


class MissingLookupError(AbdkitError, KeyError):
    def __init__(self, relation: str):
        self.relation = relation
        super().__init__(f"no pp-definition for relation {relation}")

    def __str__(self):
        return self.args[0]
