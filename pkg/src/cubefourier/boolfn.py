"""Boolean functions on the discrete cube: representations and constructors.

A function on n variables is stored as a dense table over all 2**n input
masks.  Coordinate i (1-based) lives at mask bit i-1, least significant
first.  Output bit b stands for the +-1 value (-1)**b, so bit 0 means +1;
this one convention is fixed everywhere for reproducible spectra, and is
what makes ``parity(n, s)`` coincide with the uniform-measure character of
the set s.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .config import check_table_size
from .errors import InputError

__all__ = [
    "TruthTable",
    "RealTable",
    "Bias",
    "GraphPropertySpec",
    "from_bits",
    "dictator",
    "parity",
    "majority",
    "tribes",
    "and_fn",
    "or_fn",
    "mux3",
    "constant",
    "clique_indicator",
    "critical_p0",
    "discrete_derivative",
    "random_function",
    "mask_array",
    "popcounts",
    "parse_truth_table",
    "format_truth_table",
    "load_truth_table",
    "save_truth_table",
    "table_to_hex",
]


def mask_array(n: int) -> np.ndarray:
    """All input masks 0 .. 2**n - 1 as an int64 array."""
    return np.arange(1 << n, dtype=np.int64)


def popcounts(masks: np.ndarray) -> np.ndarray:
    return np.bitwise_count(masks)


@dataclass(frozen=True, eq=False)
class TruthTable:
    """A Boolean function, one output bit per input mask."""

    n: int
    bits: np.ndarray  # uint8 in {0,1}, length 2**n, read-only

    def __post_init__(self):
        if self.n < 1:
            raise InputError("a truth table needs at least one variable")
        check_table_size(self.n, "truth table")
        arr = np.ascontiguousarray(self.bits, dtype=np.uint8)
        if arr.ndim != 1 or arr.size != 1 << self.n:
            raise InputError(
                f"expected 2^{self.n} = {1 << self.n} output bits, got {arr.size}"
            )
        if arr.size and arr.max() > 1:
            raise InputError("output bits must be 0 or 1")
        arr.setflags(write=False)
        object.__setattr__(self, "bits", arr)

    @property
    def size(self) -> int:
        return 1 << self.n

    def sign_values(self) -> np.ndarray:
        """The +-1 view as a fresh float64 array: bit b maps to (-1)**b."""
        return 1.0 - 2.0 * self.bits.astype(np.float64)

    def bit(self, mask: int) -> int:
        return int(self.bits[mask])

    def value(self, mask: int) -> int:
        """The +-1 output at one mask."""
        return 1 - 2 * int(self.bits[mask])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TruthTable)
            and self.n == other.n
            and bool(np.array_equal(self.bits, other.bits))
        )

    def __hash__(self):
        return hash((self.n, self.bits.tobytes()))

    def __repr__(self) -> str:
        if self.n <= 4:
            return f"TruthTable(n={self.n}, bits={''.join(map(str, self.bits))})"
        return f"TruthTable(n={self.n}, hex={table_to_hex(self)})"


@dataclass(frozen=True, eq=False)
class RealTable:
    """A real-valued function on the cube (n may be 0 for derivatives)."""

    n: int
    values: np.ndarray  # float64, length 2**n, read-only

    def __post_init__(self):
        if self.n < 0:
            raise InputError("variable count must be nonnegative")
        check_table_size(self.n, "table")
        arr = np.ascontiguousarray(self.values, dtype=np.float64)
        if arr.ndim != 1 or arr.size != 1 << self.n:
            raise InputError(
                f"expected 2^{self.n} = {1 << self.n} values, got {arr.size}"
            )
        if not np.all(np.isfinite(arr)):
            raise InputError("table values must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    @property
    def size(self) -> int:
        return 1 << self.n

    def sign_values(self) -> np.ndarray:
        return self.values.astype(np.float64)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RealTable)
            and self.n == other.n
            and bool(np.array_equal(self.values, other.values))
        )


@dataclass(frozen=True)
class Bias:
    """The parameter p of the product measure, optionally as an exact t/2**m.

    The exact form is required by the biased-to-uniform reduction; the
    floating value is what every transform uses.
    """

    p: float
    t: int | None = None
    m: int | None = None

    def __post_init__(self):
        if self.t is not None:
            if self.m is None or self.m < 1 or not 1 <= self.t < (1 << self.m):
                raise InputError("exact bias needs integers 1 <= t < 2^m")
            object.__setattr__(self, "p", self.t / (1 << self.m))
        if not (0.0 < self.p < 1.0) or not math.isfinite(self.p):
            raise InputError(f"bias must lie strictly between 0 and 1, got {self.p}")

    @classmethod
    def general(cls, p: float) -> "Bias":
        return cls(p=float(p))

    @classmethod
    def exact(cls, t: int, m: int) -> "Bias":
        return cls(p=0.0, t=int(t), m=int(m))

    @property
    def is_exact(self) -> bool:
        return self.t is not None

    def as_fraction(self) -> Fraction:
        if not self.is_exact:
            raise InputError(
                "this operation needs an exact dyadic bias t/2^m; approximate "
                f"p={self.p} by a nearby t/2^m first (e.g. Bias.exact(t, m))"
            )
        return Fraction(self.t, 1 << self.m)

    def __str__(self) -> str:
        if self.is_exact:
            return f"{self.t}/2^{self.m}"
        return repr(self.p)


HALF = Bias.exact(1, 1)


def as_bias(p) -> Bias:
    if isinstance(p, Bias):
        return p
    return Bias.general(float(p))


@dataclass(frozen=True)
class GraphPropertySpec:
    """Clique-containment property of graphs on labelled vertices.

    Edge variable k corresponds to the k-th vertex pair (u, v), u < v, in
    lexicographic order, so spectra are deterministic across runs.
    """

    n_vertices: int
    r: int

    def __post_init__(self):
        if not 2 <= self.r <= self.n_vertices:
            raise InputError("need 2 <= r <= n_vertices")

    @property
    def n_edges(self) -> int:
        return self.n_vertices * (self.n_vertices - 1) // 2

    def edges(self) -> list[tuple[int, int]]:
        nv = self.n_vertices
        return [(u, v) for u in range(nv) for v in range(u + 1, nv)]

    def edge_index(self, u: int, v: int) -> int:
        if u > v:
            u, v = v, u
        if not 0 <= u < v < self.n_vertices:
            raise InputError("vertex pair out of range")
        # pairs (0,1)..(0,nv-1) come first, then (1,2)..; closed form below
        nv = self.n_vertices
        return u * nv - u * (u + 1) // 2 + (v - u - 1)

    def clique_edge_masks(self) -> list[int]:
        """Edge-set mask of every r-subset of vertices, in subset order."""
        from itertools import combinations

        masks = []
        for verts in combinations(range(self.n_vertices), self.r):
            m = 0
            for i, u in enumerate(verts):
                for v in verts[i + 1 :]:
                    m |= 1 << self.edge_index(u, v)
            masks.append(m)
        return masks


# ---------------------------------------------------------------------------
# constructors


def from_bits(n: int, bits) -> TruthTable:
    """Build a table from 2**n output bits in mask order.

    ``bits`` may be any integer sequence or a string of '0'/'1' characters.
    """
    if isinstance(bits, str):
        if set(bits) - {"0", "1"}:
            raise InputError("bit string may contain only '0' and '1'")
        bits = np.frombuffer(bits.encode("ascii"), dtype=np.uint8) - ord("0")
    return TruthTable(n, np.asarray(bits))


def constant(n: int, value: int = 1) -> TruthTable:
    """The constant function with +-1 value ``value``."""
    if value not in (1, -1):
        raise InputError("constant value must be +1 or -1")
    bit = 0 if value == 1 else 1
    return TruthTable(n, np.full(1 << n, bit, dtype=np.uint8))


def dictator(n: int, i: int) -> TruthTable:
    """Output bit equals input bit i."""
    _check_coordinate(n, i)
    return TruthTable(n, ((mask_array(n) >> (i - 1)) & 1).astype(np.uint8))


def parity(n: int, s: int) -> TruthTable:
    """+-1 value at x is (-1)**|s & x|; equals the character u_s at p=1/2."""
    if not 0 <= s < (1 << n):
        raise InputError(f"subset mask {s} out of range for n={n}")
    return TruthTable(n, (popcounts(mask_array(n) & s) & 1).astype(np.uint8))


def majority(n: int) -> TruthTable:
    if n % 2 == 0:
        raise InputError("majority needs an odd variable count")
    return TruthTable(n, (popcounts(mask_array(n)) > n // 2).astype(np.uint8))


def tribes(w: int, s: int) -> TruthTable:
    """OR of s disjoint ANDs of width w; tribe j sits at bits (j-1)w .. jw-1."""
    if w < 1 or s < 1:
        raise InputError("tribes needs positive width and tribe count")
    n = w * s
    check_table_size(n, "truth table")
    masks = mask_array(n)
    sat = np.zeros(masks.size, dtype=bool)
    tribe = (1 << w) - 1
    for j in range(s):
        tm = tribe << (j * w)
        sat |= (masks & tm) == tm
    return TruthTable(n, sat.astype(np.uint8))


def and_fn(n: int) -> TruthTable:
    return TruthTable(n, (mask_array(n) == (1 << n) - 1).astype(np.uint8))


def or_fn(n: int) -> TruthTable:
    return TruthTable(n, (mask_array(n) != 0).astype(np.uint8))


def mux3() -> TruthTable:
    """f(x1, x2, x3) = x2 if x1 = 1 else x3; a depth-2 decision tree."""
    masks = mask_array(3)
    bits = np.where(masks & 1, (masks >> 1) & 1, (masks >> 2) & 1)
    return TruthTable(3, bits.astype(np.uint8))


def clique_indicator(spec: GraphPropertySpec) -> TruthTable:
    """Bit 1 at edge mask T iff the graph with edge set T contains K_r."""
    n = spec.n_edges
    check_table_size(n, "clique indicator")
    masks = mask_array(n)
    sat = np.zeros(masks.size, dtype=bool)
    for cm in spec.clique_edge_masks():
        sat |= (masks & cm) == cm
    return TruthTable(n, sat.astype(np.uint8))


def critical_p0(spec: GraphPropertySpec) -> Bias:
    """The bias where the expected K_r count condition C(n,r) p^C(r,2) = 1/2 holds."""
    subsets = math.comb(spec.n_vertices, spec.r)
    exponent = math.comb(spec.r, 2)
    return Bias.general((0.5 / subsets) ** (1.0 / exponent))


def random_function(n: int, seed: int, density: float = 0.5) -> TruthTable:
    """Each output bit independently 1 with probability ``density``.

    Drawn from a PCG64-backed numpy Generator, so identical (n, seed,
    density) reproduce the same table on every platform.
    """
    if not 0.0 <= density <= 1.0:
        raise InputError("density must lie in [0, 1]")
    check_table_size(n, "truth table")
    rng = np.random.Generator(np.random.PCG64(seed))
    return TruthTable(n, (rng.random(1 << n) < density).astype(np.uint8))


# ---------------------------------------------------------------------------
# pointwise calculus


def discrete_derivative(f: TruthTable | RealTable, i: int) -> RealTable:
    """Half the difference of f across coordinate i, on n-1 variables.

    "Across coordinate i" means between the +-1 coordinate values +1 and -1,
    i.e. between stored bits 0 and 1.  Remaining coordinates keep their
    relative order.  For Boolean f every output lies in {-1, 0, 1}.
    """
    _check_coordinate(f.n, i)
    vals = f.sign_values()
    h = 1 << (i - 1)
    pairs = vals.reshape(-1, 2, h)
    out = (pairs[:, 0, :] - pairs[:, 1, :]) / 2.0
    return RealTable(f.n - 1, out.reshape(-1))


def _check_coordinate(n: int, i: int) -> None:
    if not 1 <= i <= n:
        raise InputError(f"coordinate {i} out of range 1..{n}")


# ---------------------------------------------------------------------------
# text format
#
# Line 1: "n=<n>".  Line 2: 2**n characters '0'/'1' in mask order, or the
# same bit string packed as "hex:<digits>" (the bit string read as a binary
# number, mask 0 first).  Writers always emit the character form.


def format_truth_table(f: TruthTable) -> str:
    return f"n={f.n}\n" + "".join("1" if b else "0" for b in f.bits) + "\n"


def table_to_hex(f: TruthTable) -> str:
    width = ((1 << f.n) + 3) // 4
    value = int("".join("1" if b else "0" for b in f.bits), 2)
    return format(value, f"0{width}x")


def parse_truth_table(text: str) -> TruthTable:
    lines = [ln.strip() for ln in text.strip().splitlines()]
    if len(lines) < 2 or not lines[0].startswith("n="):
        raise InputError('truth-table text must start with an "n=<count>" line')
    try:
        n = int(lines[0][2:])
    except ValueError as exc:
        raise InputError(f"bad variable count {lines[0][2:]!r}") from exc
    if n < 1:
        raise InputError("variable count must be at least 1")
    check_table_size(n, "truth table")
    body = lines[1]
    size = 1 << n
    if body.startswith("hex:"):
        digits = body[4:]
        expected = (size + 3) // 4
        if len(digits) != expected:
            raise InputError(
                f"hex body must have {expected} digits for n={n}, got {len(digits)}"
            )
        try:
            value = int(digits, 16)
        except ValueError as exc:
            raise InputError("hex body contains non-hex characters") from exc
        bits = np.array([(value >> (size - 1 - x)) & 1 for x in range(size)], dtype=np.uint8)
        return TruthTable(n, bits)
    if len(body) != size:
        raise InputError(f"expected 2^{n} = {size} characters of '0'/'1', got {len(body)}")
    if set(body) - {"0", "1"}:
        raise InputError("table body may contain only '0' and '1'")
    return TruthTable(n, np.frombuffer(body.encode("ascii"), dtype=np.uint8) - ord("0"))


def load_truth_table(path) -> TruthTable:
    with open(path, "r", encoding="ascii") as fh:
        return parse_truth_table(fh.read())


def save_truth_table(f: TruthTable, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(format_truth_table(f))
