"""Exception types shared across the certification modules."""

from __future__ import annotations


class ConditionNotApplicable(Exception):
    """An applicability hypothesis fails (e.g. b >= 1, gap condition violated).

    This is a domain outcome, not a usage error: the requested certificate
    simply does not exist for the given constants.
    """


class BoundNotValid(ConditionNotApplicable):
    """A bound was requested at a point the certificate does not cover."""


class NumericalFailure(Exception):
    """A numerical routine failed to produce a trustworthy result."""


class NearSingular(NumericalFailure):
    """Resolvent norm requested within 1e-12 of an eigenvalue."""
