"""Number fields of degree at most two and their arithmetic invariants.

A field is selected by its squarefree ``d`` (0 stands for the rational
field). Everything downstream only needs the quadratic character
``n -> (d_K / n)`` and the residue of the Dedekind zeta function at 1.
"""
from __future__ import annotations

import enum
import logging
import math
from dataclasses import asdict, dataclass
from functools import lru_cache

import numpy as np
from scipy.special import bernoulli

from .conf import setting
from .exceptions import InvalidFieldError, NumericFailure, UnsupportedFieldError

log = logging.getLogger("lattice")

# Terms kept in the asymptotic expansion of the digamma function.
_DIGAMMA_TERMS = 3


class SplittingType(str, enum.Enum):
    SPLIT = "split"
    INERT = "inert"
    RAMIFIED = "ramified"


@dataclass(frozen=True)
class FieldSpec:
    d: int
    disc: int
    degree: int
    r1: int
    r2: int
    w: int
    residue_c: float

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    @property
    def label(self) -> str:
        return "Q" if self.is_rational else f"Q(sqrt({self.d}))"

    def as_dict(self) -> dict:
        data = asdict(self)
        data["label"] = self.label
        return data


def is_squarefree(n: int) -> bool:
    n = abs(n)
    if n == 0:
        return False
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        if n % p == 0:
            n //= p
        p += 1
    return True


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    p = 3
    while p * p <= n:
        if n % p == 0:
            return False
        p += 2
    return True


def fundamental_discriminant(d: int) -> int:
    if d == 0:
        return 1
    return d if d % 4 == 1 else 4 * d


def _jacobi(a: int, n: int) -> int:
    # n odd and positive
    a %= n
    result = 1
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def kronecker(disc: int, n: int) -> int:
    """Kronecker symbol (disc / n) for n >= 1."""
    if n < 1:
        raise ValueError("kronecker symbol needs n >= 1")
    result = 1
    while n % 2 == 0:
        n //= 2
        if disc % 2 == 0:
            return 0
        if disc % 8 in (3, 5):
            result = -result
    return result * _jacobi(disc, n)


@lru_cache(maxsize=64)
def _character_mod(disc: int) -> np.ndarray:
    q = abs(disc)
    values = np.array([kronecker(disc, r if r else q) for r in range(q)], dtype=np.int8)
    values.flags.writeable = False
    return values


def character_mod(field: FieldSpec) -> np.ndarray:
    """chi(r) for r = 0 .. |d_K|-1, so that chi(n) == table[n % |d_K|]."""
    return _character_mod(field.disc)


def splitting_type(field: FieldSpec, p: int) -> SplittingType:
    if field.is_rational:
        raise UnsupportedFieldError("the rational field has no splitting types")
    if not is_prime(p):
        raise ValueError(f"{p} is not a rational prime")
    symbol = kronecker(field.disc, p)
    if symbol == 1:
        return SplittingType.SPLIT
    if symbol == -1:
        return SplittingType.INERT
    return SplittingType.RAMIFIED


def _digamma_tail(z: np.ndarray) -> tuple[np.ndarray, float]:
    """Asymptotic digamma on z >= 1 and a bound on what was left out."""
    b = bernoulli(2 * _DIGAMMA_TERMS + 2)
    value = np.log(z) - 0.5 / z
    for k in range(1, _DIGAMMA_TERMS + 1):
        value -= b[2 * k] / (2 * k * z ** (2 * k))
    k = _DIGAMMA_TERMS + 1
    omitted = abs(b[2 * k]) / (2 * k * float(np.min(z)) ** (2 * k))
    return value, omitted


def l_one(disc: int, tol: float) -> float:
    """L(1, chi_disc) for a non-principal real character.

    Whole periods of the character are summed directly (each period sums to
    zero); what lies beyond K periods equals -(1/q) sum_r chi(r) psi(K + r/q)
    and is taken from the digamma expansion, whose omitted part bounds the
    error by roughly 1/(240 K^8).
    """
    q = abs(disc)
    chi = _character_mod(disc).astype(np.float64)
    chi_by_residue = np.roll(chi, -1)  # chi(1) .. chi(q)
    residues = np.arange(1, q + 1, dtype=np.float64)
    max_blocks = setting("VLP_L_MAX_BLOCKS")

    blocks = 4
    partial = math.nan
    bound = math.inf
    while blocks <= max_blocks:
        n = np.arange(1, blocks * q + 1, dtype=np.float64)
        head = math.fsum(np.tile(chi_by_residue, blocks) / n)
        psi, omitted = _digamma_tail(blocks + residues / q)
        tail = -math.fsum(chi_by_residue * psi) / q
        partial = head + tail
        bound = omitted
        if bound < tol:
            log.debug("L(1, chi_%d) after %d blocks, bound %.3g", disc, blocks, bound)
            return partial
        blocks *= 2
    log.warning("L(1, chi_%d) did not reach tol=%g", disc, tol)
    raise NumericFailure(
        f"L(1, chi_{disc}) did not reach tol={tol} within {max_blocks} blocks",
        partial=partial, bound=bound,
    )


def residue_c(field: FieldSpec, tol: float | None = None) -> float:
    if tol is None:
        tol = setting("VLP_CONSTANT_TOL")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if field.is_rational:
        return 1.0
    return l_one(field.disc, tol)


def make_field(d: int) -> FieldSpec:
    d = int(d)
    if d == 1 or (d != 0 and not is_squarefree(d)):
        raise InvalidFieldError(f"d={d} is not a valid field selector")
    if d == 0:
        return FieldSpec(d=0, disc=1, degree=1, r1=1, r2=0, w=2, residue_c=1.0)
    disc = fundamental_discriminant(d)
    r1, r2 = (0, 1) if d < 0 else (2, 0)
    w = {-1: 4, -3: 6}.get(d, 2)
    c = l_one(disc, setting("VLP_CONSTANT_TOL"))
    return FieldSpec(d=d, disc=disc, degree=2, r1=r1, r2=r2, w=w, residue_c=c)


# Class numbers and regulators for the cross-check fields.
CLASS_NUMBER_DATA: dict[int, tuple[int, float]] = {
    0: (1, 1.0),
    -1: (1, 1.0),
    -3: (1, 1.0),
    2: (1, math.log(1 + math.sqrt(2))),
}


def class_number_formula_c(field: FieldSpec) -> float:
    """2^r1 (2 pi)^r2 h R / (w sqrt|d_K|) from the tabulated h and R."""
    try:
        h, regulator = CLASS_NUMBER_DATA[field.d]
    except KeyError:
        raise UnsupportedFieldError(f"no class number data for d={field.d}") from None
    return (2 ** field.r1 * (2 * math.pi) ** field.r2 * h * regulator
            / (field.w * math.sqrt(abs(field.disc))))
