"""Rank bookkeeping for the Smith-Gysin sequence of a double cover X -> X/G.

    0 -> H^0(X/G) -eta-> H^0(X) -tau-> H^0(X/G) -v-> H^1(X/G) -eta-> H^1(X) -> ...
      ... -tau-> H^J(X/G) -> 0

Only ranks are modelled.  Exactness at each of the three kinds of node pins
the next rank from the previous one, so starting from ``rank eta_0 = a_0``
an instance has at most one admissible profile.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .errors import GateResult, InvalidParam

__all__ = [
    "GysinInstance",
    "RankProfile",
    "Composite",
    "enumerate_exact_profiles",
    "verify_profile",
    "gysin_gate",
    "char_class_zero_composite",
]


@dataclass(frozen=True)
class GysinInstance:
    orbit: tuple[int, ...]  # dims of H^i(X/G)
    space: tuple[int, ...]  # dims of H^i(X)

    def __post_init__(self) -> None:
        if len(self.orbit) != len(self.space):
            raise InvalidParam(
                f"dimension vectors differ in length: {len(self.orbit)} vs {len(self.space)}"
            )
        if any(x < 0 for x in self.orbit + self.space):
            raise InvalidParam("dimensions must be non-negative")

    @classmethod
    def of(cls, orbit: Sequence[int], space: Sequence[int]) -> GysinInstance:
        return cls(tuple(orbit), tuple(space))


@dataclass(frozen=True)
class RankProfile:
    eta: tuple[int, ...]  # rank of eta*: H^i(X/G) -> H^i(X)
    transfer: tuple[int, ...]  # rank of tau: H^i(X) -> H^i(X/G)
    cup_v: tuple[int, ...]  # rank of (. v): H^i(X/G) -> H^{i+1}(X/G)


def enumerate_exact_profiles(inst: GysinInstance) -> list[RankProfile]:
    a, b = inst.orbit, inst.space
    n = len(a)
    if n == 0:
        return [RankProfile((), (), ())]
    eta, tr, cv = [], [], []
    e = a[0]
    for i in range(n):
        if not 0 <= e <= min(a[i], b[i]):
            return []
        t = b[i] - e
        if not 0 <= t <= min(a[i], b[i]):
            return []
        v = a[i] - t
        nxt = a[i + 1] if i + 1 < n else 0
        if not 0 <= v <= min(a[i], nxt):
            return []
        eta.append(e)
        tr.append(t)
        cv.append(v)
        e = nxt - v
    return [RankProfile(tuple(eta), tuple(tr), tuple(cv))]


def verify_profile(inst: GysinInstance, prof: RankProfile) -> bool:
    """Check rank-nullity exactness at every node of the long exact sequence."""
    a, b = inst.orbit, inst.space
    n = len(a)
    if not (len(prof.eta) == len(prof.transfer) == len(prof.cup_v) == n):
        return False
    for i in range(n):
        e, t, v = prof.eta[i], prof.transfer[i], prof.cup_v[i]
        nxt = a[i + 1] if i + 1 < n else 0
        if min(e, t, v) < 0 or e > min(a[i], b[i]) or t > min(a[i], b[i]) or v > min(a[i], nxt):
            return False
        incoming = prof.cup_v[i - 1] if i > 0 else 0
        # at H^i(X/G) between (. v) and eta: image of v_{i-1} = kernel of eta_i
        if incoming != a[i] - e:
            return False
        # at H^i(X) between eta and tau
        if e != b[i] - t:
            return False
        # at H^i(X/G) between tau and (. v)
        if t != a[i] - v:
            return False
    return True


def gysin_gate(orbit_dims: Sequence[int], space_dims: Sequence[int]) -> GateResult:
    n = max(len(orbit_dims), len(space_dims))
    a = tuple(orbit_dims) + (0,) * (n - len(orbit_dims))
    b = tuple(space_dims) + (0,) * (n - len(space_dims))
    if enumerate_exact_profiles(GysinInstance(a, b)):
        return GateResult.ok()
    return GateResult.fail(f"no exact rank profile for H*(X/G)={list(a)} over H*(X)={list(b)}")


class Composite(enum.Enum):
    FORCED_ZERO = "ForcedZero"
    UNKNOWN = "Unknown"


def char_class_zero_composite(profile: RankProfile, i: int) -> Composite:
    """Whether cup with the characteristic class is forced to vanish on H^i(X/G).

    For ``i = 1`` this is the statement ``v^2 = 0``.
    """
    if 0 <= i < len(profile.cup_v) and profile.cup_v[i] == 0:
        return Composite.FORCED_ZERO
    return Composite.UNKNOWN
