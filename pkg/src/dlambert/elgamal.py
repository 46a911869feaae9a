"""Toy-size ElGamal signatures and the fixed-s2 forgery.

Fixing s2 and solving h^s1 * s1^s2 = g^msg (mod p) for s1 is the same as
solving s1 * a^s1 = b (mod p) with a = h^(1/s2), b = g^(msg/s2), exponents
taken mod p - 1. That is a discrete Lambert instance with e = 1, and the
solver enumerates its solutions in the extended range {1..p*ord_p(a)}.
Only a verifier that range-checks s1 rejects the ones above p - 1.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import PreconditionError
from .modarith import PrimePower, Residue, inverse, is_generator
from .solver import DwpInstance, solve_all


class RangePolicy(str, enum.Enum):
    STRICT = "strict"
    EXTENDED = "extended"


@dataclass(frozen=True)
class ElGamalParams:
    p: int
    g: int

    def __post_init__(self):
        PrimePower(self.p, 1)
        if not is_generator(Residue(self.g, self.p)):
            raise ValueError(f"{self.g} does not generate the units mod {self.p}")


@dataclass(frozen=True)
class ElGamalKeypair:
    params: ElGamalParams
    x_priv: int
    h: int


@dataclass(frozen=True)
class Signature:
    s1: int
    s2: int


def keygen(params: ElGamalParams, x_priv: int) -> ElGamalKeypair:
    p = params.p
    if not 1 <= x_priv <= p - 2:
        raise ValueError(f"private key must lie in 1..{p - 2}")
    return ElGamalKeypair(params, x_priv, pow(params.g, x_priv, p))


def sign(keypair: ElGamalKeypair, msg: int, y: int) -> Signature:
    p, g = keypair.params.p, keypair.params.g
    if not 1 <= y <= p - 2 or math.gcd(y, p - 1) != 1:
        raise PreconditionError(f"nonce {y} must lie in 1..{p - 2} and be coprime to {p - 1}")
    s1 = pow(g, y, p)
    s2 = inverse(y, p - 1) * (msg - keypair.x_priv * s1) % (p - 1)
    return Signature(s1, s2)


def verify(
    params: ElGamalParams,
    h: int,
    msg: int,
    sig: Signature,
    range_policy: RangePolicy = RangePolicy.STRICT,
) -> bool:
    p = params.p
    if sig.s1 < 1:
        return False
    if RangePolicy(range_policy) is RangePolicy.STRICT and sig.s1 > p - 1:
        return False
    v1 = pow(h, sig.s1, p) * pow(sig.s1, sig.s2, p) % p
    v2 = pow(params.g, msg % (p - 1), p)
    return v1 == v2


def forgery_instance(params: ElGamalParams, h: int, msg: int, s2: int) -> DwpInstance:
    """The Lambert instance s1 * a^s1 = b (mod p) behind a fixed s2."""
    p = params.p
    if math.gcd(s2, p - 1) != 1:
        raise PreconditionError(f"s2 = {s2} is not invertible mod {p - 1}")
    s2_inv = inverse(s2, p - 1)
    a = pow(h, s2_inv, p)
    b = pow(params.g, msg * s2_inv % (p - 1), p)
    return DwpInstance.of(p, 1, a, b)


def forge_fixed_s2(params: ElGamalParams, h: int, msg: int, s2: int) -> list[Signature]:
    """Every s1 in the extended range that makes (s1, s2) verify for ``msg``."""
    inst = forgery_instance(params, h, msg, s2)
    return [Signature(s1, s2 % (params.p - 1)) for s1 in solve_all(inst).solutions]
