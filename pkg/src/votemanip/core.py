"""Candidates, weighted ballots, profiles, and pairwise tallies.

Candidates are dense 0-based indices everywhere inside the library; display
labels exist only at the I/O boundary (see :mod:`votemanip.documents`).
All values are immutable after construction and every function here is pure,
so everything is safe to share across threads.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

# Guard against silent corruption on platforms with fixed-width integers:
# every tally must stay below 2**62 even after multiplication by m (and by
# the largest scoring coefficient, checked where scoring vectors are known).
TALLY_BOUND = 2**62

# expand_weights materializes one ballot per weight unit; cap the blowup.
DEFAULT_EXPANSION_CAP = 100_000


class ProfileError(ValueError):
    """Raised when ballots or profiles violate a structural invariant."""


@dataclass(frozen=True)
class Candidate:
    """A candidate: a dense index plus an optional display label."""

    index: int
    label: str | None = None

    def __post_init__(self) -> None:
        if self.index < 0:
            raise ProfileError(f"candidate index must be >= 0, got {self.index}")


@dataclass(frozen=True)
class WeightedBallot:
    """A strict linear order over all candidates with a positive integer weight.

    ``order`` lists candidate indices from most- to least-preferred and must
    be a permutation of ``0..m-1`` for the enclosing profile's ``m``.
    """

    order: tuple[int, ...]
    weight: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "order", tuple(self.order))
        if not isinstance(self.weight, int) or isinstance(self.weight, bool):
            raise ProfileError(f"ballot weight must be an integer, got {self.weight!r}")
        if self.weight < 1:
            raise ProfileError(f"ballot weight must be >= 1, got {self.weight}")

    def position_of(self, candidate: int) -> int:
        """0-based rank of ``candidate`` in this ballot."""
        return self.order.index(candidate)


@dataclass(frozen=True)
class Profile:
    """A list of weighted ballots over candidates ``0..m-1``.

    Ballot order is preserved as given; anonymity (invariance under ballot
    permutation) is a tested property of the tally functions, not a
    canonicalization performed here.
    """

    m: int
    ballots: tuple[WeightedBallot, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "ballots", tuple(self.ballots))
        if self.m < 0:
            raise ProfileError(f"candidate count must be >= 0, got {self.m}")
        expected = frozenset(range(self.m))
        for ballot in self.ballots:
            if len(ballot.order) != self.m:
                raise ProfileError(
                    f"ballot {ballot.order} has {len(ballot.order)} entries, expected {self.m}"
                )
            seen = set(ballot.order)
            if seen != expected:
                dup = [c for c, n in _counts(ballot.order).items() if n > 1]
                if dup:
                    raise ProfileError(f"ballot {ballot.order} repeats candidate {dup[0]}")
                raise ProfileError(
                    f"ballot {ballot.order} is not a permutation of 0..{self.m - 1}"
                )
        total = sum(b.weight for b in self.ballots)
        if total * max(self.m, 1) >= TALLY_BOUND:
            raise ProfileError(
                f"total weight {total} risks tally overflow (bound {TALLY_BOUND})"
            )

    @property
    def total_weight(self) -> int:
        return sum(b.weight for b in self.ballots)

    def with_extra_ballots(self, extra: tuple[WeightedBallot, ...]) -> "Profile":
        """A new profile with ``extra`` appended after the existing ballots."""
        return Profile(self.m, self.ballots + tuple(extra))


def _counts(items) -> dict:
    out: dict = {}
    for it in items:
        out[it] = out.get(it, 0) + 1
    return out


def validate_profile(m: int, ballots) -> Profile:
    """Validate ``ballots`` over ``m`` candidates and return the Profile.

    Raises ProfileError on duplicate or missing candidates in an order, a
    nonpositive weight, or a weight sum large enough to risk overflow.
    """
    return Profile(m, tuple(ballots))


@dataclass(frozen=True)
class PairwiseMatrix:
    """Cumulated weights ``n[i][j]`` of ballots preferring i to j.

    For every i != j, ``n[i][j] + n[j][i]`` equals the profile's total
    weight; the diagonal is zero.
    """

    m: int
    n: tuple[tuple[int, ...], ...]

    def net(self, x: int, y: int) -> int:
        """Net margin of x over y (antisymmetric, zero on the diagonal)."""
        return self.n[x][y] - self.n[y][x]


def pairwise_tally(profile: Profile) -> PairwiseMatrix:
    """Total weight preferring i to j, for every ordered candidate pair."""
    m = profile.m
    n = [[0] * m for _ in range(m)]
    for ballot in profile.ballots:
        w = ballot.weight
        order = ballot.order
        for ahead_pos, i in enumerate(order):
            row = n[i]
            for j in order[ahead_pos + 1 :]:
                row[j] += w
    return PairwiseMatrix(m, tuple(tuple(row) for row in n))


def net_preference(tally: PairwiseMatrix, x: int, y: int) -> int:
    """``n[x][y] - n[y][x]``; positive when x is pairwise-preferred to y."""
    return tally.net(x, y)


def net_matrix(tally: PairwiseMatrix) -> tuple[tuple[int, ...], ...]:
    """The full antisymmetric margin matrix derived from a tally."""
    m = tally.m
    return tuple(
        tuple(tally.n[i][j] - tally.n[j][i] for j in range(m)) for i in range(m)
    )


def expand_weights(profile: Profile, cap: int = DEFAULT_EXPANSION_CAP) -> Profile:
    """Replace every weight-k ballot with k identical unit-weight ballots.

    The pairwise tally (and hence every protocol outcome) is unchanged.
    Raises ProfileError if the expanded ballot count would exceed ``cap``.
    """
    total = profile.total_weight
    if total > cap:
        raise ProfileError(
            f"expansion would create {total} ballots, above the cap of {cap}"
        )
    expanded = tuple(
        itertools.chain.from_iterable(
            (WeightedBallot(b.order, 1),) * b.weight for b in profile.ballots
        )
    )
    return Profile(profile.m, expanded)
