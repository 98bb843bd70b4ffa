#!/usr/bin/env python

USAGE = 2
CAPACITY = 3
VALIDATION = 4


class RumorSourceError(Exception):
    """
    Base error. ``code`` doubles as the exit status of the command line.

    >> raise CapacityError('node count {count} exceeds {limit}', count=11, limit=10)
    """
    code = USAGE

    def __init__(self, message, code=None, **params):
        if code is not None:
            self.code = code
        self.params = params
        self.message = message

        if params:
            self.message = message.format(**params)
        super(RumorSourceError, self).__init__(self.message)

    def __repr__(self):
        return '<%s:%s>' % (self.code, self.message)


class ArgumentError(RumorSourceError):
    code = USAGE


class DomainError(ArgumentError):
    pass


class BackendError(ArgumentError):
    pass


class ConfigError(ArgumentError):
    pass


class CapacityError(RumorSourceError):
    code = CAPACITY


class BudgetError(CapacityError):
    pass


class ValidationError(RumorSourceError):
    code = VALIDATION


class ParseError(ValidationError):
    def __init__(self, message, line=None, **params):
        self.line = line
        if line is not None:
            message = 'line {line}: ' + message
            params['line'] = line
        super(ParseError, self).__init__(message, **params)


class NoPathError(ValidationError):
    pass


class ShapeError(ValidationError):
    pass


class NoCandidateError(ValidationError):
    pass
