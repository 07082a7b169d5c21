"""Permutations of {0,...,n-1}.

Points are 0-based internally and 1-based in cycle notation. Groups act on
the right: the image of w under p is p.images[w], and (w^p)^q = w^(p*q).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DegreeMismatchError, DomainError, GroupSpecError

CYCLE_RE = re.compile(r"\(\s*(\d+(?:\s*,\s*\d+)*)?\s*\)")


@dataclass(frozen=True, slots=True)
class Permutation:
    """A bijection of {0,...,n-1} stored as its image sequence.

    The constructor trusts its input; use from_images() for unchecked data.
    """

    images: tuple[int, ...]

    @classmethod
    def from_images(cls, images: Sequence[int]) -> Permutation:
        images = tuple(int(x) for x in images)
        if sorted(images) != list(range(len(images))):
            raise DomainError(f"images {list(images)} are not a permutation of 0..{len(images) - 1}")
        return cls(images)

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]]) -> Permutation:
        """Build from 0-based cycles; a point may appear in at most one cycle."""
        images = list(range(degree))
        seen: set[int] = set()
        for cycle in cycles:
            for point in cycle:
                if not 0 <= point < degree:
                    raise DomainError(f"point {point + 1} out of range 1..{degree}")
                if point in seen:
                    raise GroupSpecError(f"point {point + 1} appears twice")
                seen.add(point)
            for i, point in enumerate(cycle):
                images[point] = cycle[(i + 1) % len(cycle)]
        return cls(tuple(images))

    @classmethod
    def parse(cls, text: str, degree: int) -> Permutation:
        """Parse 1-based cycle notation such as "(1,2,3)(4,5)"; "()" is the identity."""
        stripped = text.strip()
        cycles: list[list[int]] = []
        pos = 0
        while pos < len(stripped):
            match = CYCLE_RE.match(stripped, pos)
            if match is None:
                raise GroupSpecError(f"could not parse permutation {text!r}")
            body = match.group(1)
            if body:
                cycles.append([int(x) - 1 for x in body.split(",")])
            pos = match.end()
            while pos < len(stripped) and stripped[pos].isspace():
                pos += 1
        if not stripped:
            raise GroupSpecError("empty permutation")
        return cls.from_cycles(degree, cycles)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def image(self, point: int) -> int:
        if not 0 <= point < len(self.images):
            raise DomainError(f"point {point} outside domain of degree {len(self.images)}")
        return self.images[point]

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def __pow__(self, exponent: int) -> Permutation:
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = Permutation.identity(self.degree)
        base = self
        while exponent:
            if exponent & 1:
                result = compose(result, base)
            base = compose(base, base)
            exponent >>= 1
        return result

    def inverse(self) -> Permutation:
        inv = [0] * len(self.images)
        for point, img in enumerate(self.images):
            inv[img] = point
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == img for i, img in enumerate(self.images))

    def moved_points(self) -> list[int]:
        return [i for i, img in enumerate(self.images) if i != img]

    def first_moved(self) -> int | None:
        for i, img in enumerate(self.images):
            if i != img:
                return i
        return None

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point, 0-based."""
        seen: set[int] = set()
        out: list[tuple[int, ...]] = []
        for start in range(len(self.images)):
            if start in seen or self.images[start] == start:
                continue
            cycle = [start]
            seen.add(start)
            point = self.images[start]
            while point != start:
                cycle.append(point)
                seen.add(point)
                point = self.images[point]
            out.append(tuple(cycle))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        """Sorted cycle lengths including fixed points."""
        lengths = [len(c) for c in self.cycles()]
        lengths += [1] * (len(self.images) - sum(lengths))
        return tuple(sorted(lengths, reverse=True))

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles())) if not self.is_identity() else 1

    def sign(self) -> int:
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + ",".join(str(p + 1) for p in c) + ")" for c in cycles)

    def __repr__(self) -> str:
        return f"Permutation({self})"


def identity(degree: int) -> Permutation:
    return Permutation.identity(degree)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply p first, then q."""
    if len(p.images) != len(q.images):
        raise DegreeMismatchError(f"cannot compose degree {p.degree} with degree {q.degree}")
    qi = q.images
    return Permutation(tuple(qi[i] for i in p.images))


def inverse(p: Permutation) -> Permutation:
    return p.inverse()


def conjugate(g: Permutation, s: Permutation) -> Permutation:
    """g^s = s^-1 g s."""
    if len(g.images) != len(s.images):
        raise DegreeMismatchError(f"cannot conjugate degree {g.degree} by degree {s.degree}")
    # s^-1 g s maps s(w) to s(g(w))
    images = [0] * len(g.images)
    si = s.images
    for w, gw in enumerate(g.images):
        images[si[w]] = si[gw]
    return Permutation(tuple(images))


def commutator(g: Permutation, h: Permutation) -> Permutation:
    """[g,h] = g^-1 h^-1 g h."""
    return compose(compose(g.inverse(), h.inverse()), compose(g, h))


def format_perms(perms: Iterable[Permutation]) -> str:
    return ",".join(str(p) for p in perms)
