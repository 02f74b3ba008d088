"""Combinatorial and mixed decision spaces, encodings, and proposal moves.

A point is a 1-D float array of length ``p``.  Entries of categorical
dimensions are whole numbers in ``[0, cardinality)``; entries of continuous
dimensions are reals inside the dimension's bounds.  Points are treated as
immutable: every operation returns a fresh array.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import EncodingError, InvalidDimensionError, SpaceTooLargeError


@dataclass(frozen=True)
class Categorical:
    """A finite dimension with categories 0, 1, ..., cardinality - 1."""

    cardinality: int

    def __post_init__(self):
        if self.cardinality < 2:
            raise ValueError(f"categorical cardinality must be >= 2, got {self.cardinality}")


@dataclass(frozen=True)
class Continuous:
    """A bounded real dimension."""

    lower: float
    upper: float

    def __post_init__(self):
        if not self.lower < self.upper:
            raise ValueError(f"continuous bounds must satisfy lower < upper, got [{self.lower}, {self.upper}]")


class SpaceSpec:
    """An ordered product of categorical and continuous dimensions."""

    def __init__(self, dims):
        dims = tuple(dims)
        if len(dims) == 0:
            raise ValueError("a space needs at least one dimension")
        for d in dims:
            if not isinstance(d, (Categorical, Continuous)):
                raise TypeError(f"unsupported dimension type: {type(d).__name__}")
        self.dims = dims

    @classmethod
    def binary(cls, p):
        """A space of p binary dimensions."""
        return cls([Categorical(2)] * p)

    @classmethod
    def categorical(cls, cardinalities):
        return cls([Categorical(int(k)) for k in cardinalities])

    @property
    def p(self):
        return len(self.dims)

    @property
    def is_discrete(self):
        return all(isinstance(d, Categorical) for d in self.dims)

    @property
    def one_hot_width(self):
        """Total one-hot length: sum of cardinalities of the categorical dims."""
        return sum(d.cardinality for d in self.dims if isinstance(d, Categorical))

    @property
    def n_points(self):
        """Number of points of a fully categorical space."""
        if not self.is_discrete:
            raise SpaceTooLargeError("space has continuous dimensions; not enumerable")
        n = 1
        for d in self.dims:
            n *= d.cardinality
        return n

    def validate(self, x):
        x = np.asarray(x, dtype=float)
        if x.shape != (self.p,):
            raise EncodingError(f"point has shape {x.shape}, expected ({self.p},)")
        for s, d in enumerate(self.dims):
            v = x[s]
            if isinstance(d, Categorical):
                if v != int(v) or not 0 <= v < d.cardinality:
                    raise EncodingError(f"entry {s}={v} not a category index in [0, {d.cardinality})")
            else:
                if not d.lower <= v <= d.upper:
                    raise EncodingError(f"entry {s}={v} outside [{d.lower}, {d.upper}]")
        return x

    def contains(self, x):
        try:
            self.validate(x)
        except EncodingError:
            return False
        return True

    def uniform(self, rng):
        """Draw a uniform random point."""
        out = np.empty(self.p)
        for s, d in enumerate(self.dims):
            if isinstance(d, Categorical):
                out[s] = rng.integers(d.cardinality)
            else:
                out[s] = rng.uniform(d.lower, d.upper)
        return out

    def enumerate_points(self, max_points=4096):
        """All points of a categorical space, in lexicographic order."""
        if not self.is_discrete:
            raise SpaceTooLargeError("cannot enumerate a space with continuous dimensions")
        if self.n_points > max_points:
            raise SpaceTooLargeError(f"space has {self.n_points} points, cap is {max_points}")
        ranges = [range(d.cardinality) for d in self.dims]
        return [np.array(vals, dtype=float) for vals in itertools.product(*ranges)]

    def point_key(self, x):
        """Hashable key for a point of a categorical space."""
        return tuple(int(v) for v in x)

    def to_config(self):
        """Compact text form, e.g. 'cat:2,cat:3,cont:0:1'."""
        parts = []
        for d in self.dims:
            if isinstance(d, Categorical):
                parts.append(f"cat:{d.cardinality}")
            else:
                parts.append(f"cont:{d.lower:g}:{d.upper:g}")
        return ",".join(parts)

    @classmethod
    def from_config(cls, text):
        dims = []
        for part in text.split(","):
            fields = part.strip().split(":")
            if fields[0] == "cat":
                dims.append(Categorical(int(fields[1])))
            elif fields[0] == "cont":
                dims.append(Continuous(float(fields[1]), float(fields[2])))
            else:
                raise ValueError(f"bad dimension spec {part!r}")
        return cls(dims)

    def __eq__(self, other):
        return isinstance(other, SpaceSpec) and self.dims == other.dims

    def __repr__(self):
        return f"SpaceSpec({self.to_config()!r})"


def encode_one_hot(x, spec):
    """Full one-hot bits of a point of a purely categorical space.

    Blocks are ordered by dimension index, bits within a block by category
    index; each block has exactly one bit set.
    """
    x = spec.validate(x)
    if not spec.is_discrete:
        raise EncodingError("one-hot encoding is defined for categorical dimensions only")
    bits = np.zeros(spec.one_hot_width, dtype=np.int8)
    offset = 0
    for s, d in enumerate(spec.dims):
        bits[offset + int(x[s])] = 1
        offset += d.cardinality
    return bits


def decode_one_hot(bits, spec):
    """Inverse of :func:`encode_one_hot`."""
    if not spec.is_discrete:
        raise EncodingError("one-hot decoding is defined for categorical dimensions only")
    bits = np.asarray(bits)
    if bits.shape != (spec.one_hot_width,):
        raise EncodingError(f"bit vector has shape {bits.shape}, expected ({spec.one_hot_width},)")
    out = np.empty(spec.p)
    offset = 0
    for s, d in enumerate(spec.dims):
        block = bits[offset:offset + d.cardinality]
        if block.sum() != 1:
            raise EncodingError(f"block for dimension {s} does not have exactly one bit set")
        out[s] = int(np.argmax(block))
        offset += d.cardinality
    return out


def binary_feature_width(spec):
    """Width of the surrogate-facing binary encoding.

    Binary dimensions contribute one raw column; wider categorical dimensions
    contribute a full one-hot block.
    """
    if not spec.is_discrete:
        raise EncodingError("binary features are defined for categorical dimensions only")
    return sum(1 if d.cardinality == 2 else d.cardinality for d in spec.dims)


def binary_features(x, spec):
    """Surrogate-facing binary vector of a categorical point.

    Binary dims map to their raw 0/1 value; dims with more than two
    categories are one-hot encoded (blocks in dimension order).
    """
    x = spec.validate(x)
    out = np.zeros(binary_feature_width(spec))
    offset = 0
    for s, d in enumerate(spec.dims):
        if d.cardinality == 2:
            out[offset] = x[s]
            offset += 1
        else:
            out[offset + int(x[s])] = 1.0
            offset += d.cardinality
    return out


def binary_design(points, spec):
    """Stack :func:`binary_features` rows for a list of points."""
    return np.array([binary_features(x, spec) for x in points])


def propose_uniform_flip(x, spec, rng):
    """Resample one uniformly chosen dimension over its full domain.

    The new value may equal the current one, so the move is exactly
    symmetric: q(x'|x) = q(x|x').
    """
    s = int(rng.integers(spec.p))
    return _resample_dim(x, s, spec, rng)


def _resample_dim(x, s, spec, rng):
    out = np.array(x, dtype=float)
    d = spec.dims[s]
    if isinstance(d, Categorical):
        out[s] = rng.integers(d.cardinality)
    else:
        out[s] = rng.uniform(d.lower, d.upper)
    return out


def propose_gaussian_component(x, s, step, spec, rng):
    """Additive Gaussian move on continuous dimension s, clipped to bounds.

    Clipping breaks exact proposal symmetry at the boundary; callers that
    rely on a symmetric q should stay in the interior.
    """
    if not 0 <= s < spec.p:
        raise InvalidDimensionError(f"dimension index {s} out of range for p={spec.p}")
    d = spec.dims[s]
    if not isinstance(d, Continuous):
        raise InvalidDimensionError(f"dimension {s} is not continuous")
    out = np.array(x, dtype=float)
    out[s] = np.clip(out[s] + step * rng.standard_normal(), d.lower, d.upper)
    return out


class UniformFlipProposal:
    """Symmetric single-dimension proposal used by the samplers and baselines.

    ``propose`` picks a dimension uniformly and resamples it over its full
    domain; ``propose_dim`` targets a given dimension (the coordinate-sweep
    samplers use it).  Both return ``(candidate, log_q_ratio)`` where the
    log proposal-density ratio log q(x|x') - log q(x'|x) is 0 by symmetry.
    """

    def __init__(self, spec):
        self.spec = spec

    def propose(self, x, rng):
        return propose_uniform_flip(x, self.spec, rng), 0.0

    def propose_dim(self, x, s, rng):
        return _resample_dim(x, s, self.spec, rng), 0.0


class MixedProposal:
    """Single-dimension proposal for mixed spaces.

    Categorical dims are resampled uniformly; continuous dims take a
    Gaussian step of the given size, clipped to bounds.  The Gaussian move
    is treated as symmetric (exact in the interior, approximate at the
    boundary due to clipping).
    """

    def __init__(self, spec, gaussian_step=0.1):
        self.spec = spec
        self.gaussian_step = gaussian_step

    def propose(self, x, rng):
        return self.propose_dim(x, int(rng.integers(self.spec.p)), rng)

    def propose_dim(self, x, s, rng):
        if isinstance(self.spec.dims[s], Categorical):
            return _resample_dim(x, s, self.spec, rng), 0.0
        return propose_gaussian_component(x, s, self.gaussian_step, self.spec, rng), 0.0
