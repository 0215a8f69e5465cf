"""Star and extended-star influence games.

A star has leaders L and reciprocals R feeding a center c, which feeds R and
the followers F; independents I are isolated.  Players are L, R and I.  After
normalization every label except the center's is 0 or 1, so a star is fully
described by class sizes, the number of zero-labeled vertices in each class,
the center label and the quota.

Canonical vertex order is L, R, I, c, F (then F_u for an extended star); the
zero-labeled vertices come first inside each class.

Counting
--------
Expansion counts use closed binomial sums.  With all labels positive a
coalition either leaves the center inactive (fewer than f(c) of L+R chosen,
nothing spreads) or activates it (then R, F and c join).  A center label of 0
activates everything reachable.  Zero-labeled vertices other than c are
always active: they are stripped, the center label drops by the number
stripped from L+R, and the count is shifted and doubled per stripped vertex.

Oblivious satisfaction of a player i is 2^(n-1) + 2^(n-|N|) * (W1 - W0),
where W1 / W0 count coalitions of the other players that win with i forced
active / inactive.  Forcing active is a zero label; forcing inactive removes a
leader or independent and turns a reciprocal into a follower.

Non-oblivious satisfaction sums over the number of chosen leaders l,
reciprocals r and independents, and the center's own bit.  The center is
active iff l + r >= f(c); its non-oblivious bit compares p_c and q_c against
f(c), where p_c = l + |R| if active and l + r otherwise.  Every other vertex
decides as in the oblivious model, so only the center bit can differ.  The
two sets where that changes the outcome have sizes

    A0 = 2^|F| * sum_l C(|L|, l) C(|I|, q-l-|R|-|F|-1) * sum_{r >= f(c)-l} C(|R|, r)
         over l with |L| - l >= f(c)
    B1 = 2^|F| * sum_j C(|L|+|R|, j) C(|I|, q-1-j)
         over j < f(c) with |L|+|R|-j < f(c)

and Sat(c) = 2^(n-1) + A0 + B1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, comb

from .errors import InputError, ModelValidityError, NotStarError
from .graph import InfluenceGraph
from .models import PLAYER_RULES, InfluenceGame

CLASSES = ("L", "I", "R", "F")


def C(a: int, b: int) -> int:
    return comb(a, b) if 0 <= b <= a else 0


def _nonneg_int(name: str, v) -> int:
    if isinstance(v, bool) or not isinstance(v, int) or v < 0:
        raise InputError(f"{name} must be a non-negative integer, got {v!r}")
    return v


@dataclass(frozen=True)
class StarGame:
    L: int
    I: int
    R: int
    F: int
    fc: int
    quota: int
    zero_labels: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        for name in CLASSES:
            _nonneg_int(name, getattr(self, name))
        zl = {k: 0 for k in CLASSES}
        for k, v in dict(self.zero_labels).items():
            if k not in zl:
                raise InputError(f"unknown class {k!r} in zero_labels")
            zl[k] = _nonneg_int(f"zero_labels[{k}]", v)
            if zl[k] > getattr(self, k):
                raise InputError(f"zero_labels[{k}]={zl[k]} exceeds class size {getattr(self, k)}")
        object.__setattr__(self, "zero_labels", zl)
        _nonneg_int("fc", self.fc)
        if self.fc > self.L + self.R + 1:
            raise InputError(f"center label {self.fc} exceeds |L|+|R|+1; normalize first")
        _nonneg_int("quota", self.quota)
        if self.quota > self.n:
            raise InputError(f"quota {self.quota} exceeds n={self.n}")

    def __eq__(self, other):
        return isinstance(other, StarGame) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def key(self) -> tuple:
        return (self.L, self.I, self.R, self.F, self.fc, self.quota, tuple(self.zero_labels[k] for k in CLASSES))

    @property
    def n(self) -> int:
        return self.L + self.I + self.R + self.F + 1

    @property
    def n_players(self) -> int:
        return self.L + self.I + self.R

    @property
    def center(self) -> int:
        return self.L + self.R + self.I

    def positive(self, cls: str) -> int:
        return getattr(self, cls) - self.zero_labels[cls]

    def blocks(self) -> dict[str, range]:
        start = {"L": 0, "R": self.L, "I": self.L + self.R, "F": self.center + 1}
        return {k: range(start[k], start[k] + getattr(self, k)) for k in CLASSES}

    def vertex_class(self, v: int) -> tuple[str, bool]:
        """(class, zero_labeled) of canonical vertex ``v``; class 'c' for the center."""
        if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < self.n:
            raise InputError(f"unknown vertex {v!r}")
        if v == self.center:
            return "c", self.fc == 0
        for k, block in self.blocks().items():
            if v in block:
                return k, v - block.start < self.zero_labels[k]
        raise AssertionError("unreachable")

    def labels(self) -> list[int]:
        out = [1] * self.n
        for k, block in self.blocks().items():
            for v in list(block)[: self.zero_labels[k]]:
                out[v] = 0
        out[self.center] = self.fc
        return out

    def to_graph(self) -> InfluenceGraph:
        b = self.blocks()
        c = self.center
        arcs = [(v, c) for v in b["L"]] + [(v, c) for v in b["R"]]
        arcs += [(c, v) for v in b["R"]] + [(c, v) for v in b["F"]]
        return InfluenceGraph(self.n, arcs, self.labels())

    def players(self) -> frozenset[int]:
        b = self.blocks()
        return frozenset(b["L"]) | frozenset(b["R"]) | frozenset(b["I"])

    def to_game(self) -> InfluenceGame:
        return InfluenceGame(self.to_graph(), self.quota, self.players())

    def has_positive_labels(self) -> bool:
        return self.fc > 0 and not any(self.zero_labels.values())

    def replace(self, **kw) -> "StarGame":
        doc = dict(L=self.L, I=self.I, R=self.R, F=self.F, fc=self.fc, quota=self.quota, zero_labels=dict(self.zero_labels))
        doc.update(kw)
        return StarGame(**doc)

    def to_dict(self) -> dict:
        return {
            "L": self.L, "I": self.I, "R": self.R, "F": self.F, "fc": self.fc,
            "quota": self.quota, "zero_labels": dict(self.zero_labels),
        }


@dataclass(frozen=True)
class ExtendedStarGame:
    """A star plus ``Fu`` label-1 followers hanging off reciprocal ``u``."""

    star: StarGame
    u: int
    Fu: int

    def __post_init__(self):
        if self.star.R == 0 or self.u not in self.star.blocks()["R"]:
            raise InputError(f"extension vertex {self.u!r} is not a reciprocal of the star")
        _nonneg_int("Fu", self.Fu)

    @property
    def n(self) -> int:
        return self.star.n + self.Fu

    @property
    def u_zero(self) -> bool:
        return self.star.vertex_class(self.u)[1]

    def to_graph(self) -> InfluenceGraph:
        g = self.star.to_graph()
        base = self.star.n
        arcs = list(g.arcs) + [(self.u, base + j) for j in range(self.Fu)]
        return InfluenceGraph(self.n, arcs, list(g.labels) + [1] * self.Fu)

    def to_game(self) -> InfluenceGame:
        return InfluenceGame(self.to_graph(), self.star.quota, self.star.players())

    def to_dict(self) -> dict:
        doc = self.star.to_dict()
        doc["extension"] = {"u": self.u, "Fu": self.Fu}
        return doc


def star_from_dict(doc: dict) -> StarGame | ExtendedStarGame:
    """Parse a compact star descriptor; missing class sizes default to 0."""
    if not isinstance(doc, dict):
        raise InputError("star descriptor must be an object")
    unknown = set(doc) - {"L", "I", "R", "F", "fc", "quota", "zero_labels", "extension"}
    if unknown:
        raise InputError(f"unknown star descriptor fields {sorted(unknown)}")
    if "fc" not in doc or "quota" not in doc:
        raise InputError("star descriptor needs 'fc' and 'quota'")
    star = StarGame(
        L=doc.get("L", 0), I=doc.get("I", 0), R=doc.get("R", 0), F=doc.get("F", 0),
        fc=doc["fc"], quota=doc["quota"], zero_labels=doc.get("zero_labels") or {},
    )
    ext = doc.get("extension")
    if ext is None:
        return star
    if not isinstance(ext, dict) or "u" not in ext:
        raise InputError("extension must be an object with 'u' and 'Fu'")
    return ExtendedStarGame(star, ext["u"], ext.get("Fu", 0))


# recognition --------------------------------------------------------------------


@dataclass(frozen=True)
class StarRecognition:
    star: StarGame
    center: int
    mapping: dict[int, int]  # original vertex -> canonical vertex


def _label01(f: Fraction) -> int:
    return 0 if f == 0 else 1


def normalize_star(game: InfluenceGame, center: int) -> StarRecognition:
    """Normalize a star-shaped game around ``center``.

    Reciprocals with label above 1 can never be reached by the center and
    become leaders.  Positive labels of 1 or less become 1; the center label
    is rounded up and capped at |L|+|R|+1.  Raises :class:`NotStarError` if the
    shape, the player set or a follower label does not fit.
    """
    g = game.graph
    g.check_vertex(center)
    for u, v in g.arcs:
        if center not in (u, v):
            raise NotStarError(f"arc ({u}, {v}) avoids center {center}", {"center": center, "arc": [u, v]})
    preds = {u for u, v in g.arcs if v == center}
    succs = {v for u, v in g.arcs if u == center}
    classes: dict[str, list[int]] = {k: [] for k in CLASSES}
    for v in range(g.n):
        if v == center:
            continue
        if v in preds and v in succs:
            classes["L" if g.labels[v] > 1 else "R"].append(v)
        elif v in preds:
            classes["L"].append(v)
        elif v in succs:
            if g.labels[v] > 1:
                raise NotStarError(
                    f"follower {v} has label {g.labels[v]} > 1 and can never be activated",
                    {"center": center, "vertex": v},
                )
            classes["F"].append(v)
        else:
            classes["I"].append(v)
    expected = set(classes["L"]) | set(classes["R"]) | set(classes["I"])
    if set(game.players) != expected:
        raise NotStarError(
            "players must be exactly the leaders, reciprocals and independents",
            {"center": center, "players": sorted(game.players), "expected_players": sorted(expected)},
        )
    fc = min(ceil(g.labels[center]), len(classes["L"]) + len(classes["R"]) + 1)
    zero = {k: sum(1 for v in vs if g.labels[v] == 0) for k, vs in classes.items()}
    star = StarGame(
        L=len(classes["L"]), I=len(classes["I"]), R=len(classes["R"]), F=len(classes["F"]),
        fc=fc, quota=game.quota, zero_labels=zero,
    )
    mapping: dict[int, int] = {center: star.center}
    for k, block in star.blocks().items():
        ordered = sorted(classes[k], key=lambda v: (_label01(g.labels[v]), v))
        mapping.update(zip(ordered, block))
    return StarRecognition(star, center, mapping)


def recognize_star(game: InfluenceGame) -> StarRecognition:
    """Find a center and normalize; raises :class:`NotStarError` with a certificate."""
    g = game.graph
    if g.n == 0:
        raise NotStarError("empty graph has no center", {})
    if g.arcs:
        candidates = set(range(g.n))
        for u, v in g.arcs:
            candidates &= {u, v}
    else:
        candidates = set(range(g.n)) - set(game.players)
    failures = []
    for c in sorted(candidates):
        try:
            return normalize_star(game, c)
        except NotStarError as exc:
            failures.append({"center": c, "reason": str(exc)})
    if not candidates:
        raise NotStarError("no vertex touches every arc", {"candidates": []})
    raise NotStarError("no candidate center yields a star game", {"candidates": failures})


# expansion counts ------------------------------------------------------------------


def _strip_zeros(s: StarGame) -> tuple[int, int, int, int, int, int]:
    """(L, I, R, F, fc, shift) of the star with zero-labeled non-center vertices removed."""
    z = s.zero_labels
    z2 = z["L"] + z["R"]
    shift = sum(z.values())
    fc = max(s.fc - z2, 0) if s.fc > 0 else 0
    return s.positive("L"), s.positive("I"), s.positive("R"), s.positive("F"), fc, shift


def _trace_positive(L: int, I: int, R: int, F: int, fc: int, k: int) -> int:
    """Trace count |F_k(N)| / 2^(|F|+1) for a star whose non-center labels are all 1."""
    rf1 = R + F + 1
    if fc == 0:
        return C(L + I, k - rf1) << R if k >= rf1 else 0
    if k < fc:
        return C(L + R + I, k)
    inactive = sum(C(L + R, i) * C(I, k - i) for i in range(fc))
    active = 0
    for i in range(L + 1):
        rest = C(I, k - i - rf1)
        if rest:
            active += C(L, i) * sum(C(R, j) for j in range(max(fc - i, 0), R + 1)) * rest
    return inactive + active


def star_expansion_count(s: StarGame, k: int, trace: bool = False) -> int:
    """|F_k(N)| for the star; over subsets of N only when ``trace``."""
    if isinstance(k, bool) or not isinstance(k, int) or not 0 <= k <= s.n:
        return 0
    L, I, R, F, fc, shift = _strip_zeros(s)
    zero_players = s.zero_labels["L"] + s.zero_labels["R"] + s.zero_labels["I"]
    count = _trace_positive(L, I, R, F, fc, k - shift) if k >= shift else 0
    count <<= zero_players
    return count if trace else count << (s.F + 1)


def star_expansion_counts(s: StarGame, trace: bool = False) -> list[int]:
    return [star_expansion_count(s, k, trace) for k in range(s.n + 1)]


def star_winning_losing(s: StarGame) -> tuple[int, int]:
    counts = star_expansion_counts(s)
    won = sum(counts[s.quota:])
    return won, sum(counts) - won


def _trace_extended_positive(L: int, I: int, R: int, F: int, Fu: int, fc: int, k: int) -> int:
    """Trace count for an extended star with all non-center labels 1; R includes u."""
    lr = L + R - 1
    if fc == 0:
        base = R + F + Fu + 1
        return C(L + I, k - base) << R if k >= base else 0
    if k < fc:
        return C(lr + I, k) + C(lr + I, k - Fu - 1)
    inactive = sum(C(lr, i) * C(I, k - i) for i in range(fc))
    # u chosen: it occupies one of the fewer than f(c) slots and brings F_u along
    inactive += sum(C(lr, i) * C(I, k - i - 1 - Fu) for i in range(fc - 1))
    active = 0
    full = R + F + Fu + 1
    for i in range(L + 1):
        rest = C(I, k - i - full)
        if rest:
            active += C(L, i) * sum(C(R, j) for j in range(max(fc - i, 0), R + 1)) * rest
    return inactive + active


def extended_star_expansion_count(e: ExtendedStarGame, k: int, trace: bool = False) -> int:
    """|F_k(N)| for an extended star (full count carries the 2^(|F|+|F_u|+1) factor)."""
    if isinstance(k, bool) or not isinstance(k, int) or not 0 <= k <= e.n:
        return 0
    s = e.star
    if e.u_zero:
        # u is always active and so is F_u: it is a plain star shifted by |F_u|
        count = star_expansion_count(s, k - e.Fu, trace=True) if k >= e.Fu else 0
    else:
        L, I, R, F, fc, shift = _strip_zeros(s)
        zero_players = s.zero_labels["L"] + s.zero_labels["R"] + s.zero_labels["I"]
        count = _trace_extended_positive(L, I, R, F, e.Fu, fc, k - shift) if k >= shift else 0
        count <<= zero_players
    return count if trace else count << (s.F + e.Fu + 1)


def extended_star_expansion_counts(e: ExtendedStarGame, trace: bool = False) -> list[int]:
    return [extended_star_expansion_count(e, k, trace) for k in range(e.n + 1)]


# oblivious satisfaction -----------------------------------------------------------


def _with_zero(s: StarGame, cls: str) -> StarGame:
    """One more zero-labeled member of ``cls`` in place of a positive one."""
    z = dict(s.zero_labels)
    z[cls] += 1
    return s.replace(zero_labels=z)


def _winning_traces(s: StarGame) -> int:
    return sum(star_expansion_count(s, k, trace=True) for k in range(s.quota, s.n + 1))


def coalition_swings(s: StarGame, i: int) -> int:
    """#{Y subset of N - {i} : Y loses and Y + {i} wins} for a positive-label player ``i``."""
    cls, zero = s.vertex_class(i)
    if cls not in ("L", "R", "I") or zero:
        return 0
    # forced active: a zero label; the doubled trace covers the dead bit of i
    wins_with = _winning_traces(_with_zero(s, cls)) >> 1
    if cls == "R":
        # out of the coalition a reciprocal can still be reached from the center
        without = s.replace(R=s.R - 1, F=s.F + 1, fc=min(s.fc, s.L + s.R))
        wins_without = _winning_traces(without)
    elif s.quota > s.n - 1:
        wins_without = 0
    else:
        # an absent leader or independent never activates: drop it
        fc = min(s.fc, s.L + s.R) if cls == "L" else s.fc
        wins_without = _winning_traces(s.replace(**{cls: getattr(s, cls) - 1}, fc=fc))
    return wins_with - wins_without


def sat_oblivious_star(s: StarGame, i: int) -> int:
    """Exact satisfaction of canonical vertex ``i`` in the oblivious model of the star."""
    cls, zero = s.vertex_class(i)
    base = 1 << (s.n - 1)
    if cls in ("c", "F") or zero:
        return base
    return base + (coalition_swings(s, i) << (s.F + 1))


# non-oblivious satisfaction ---------------------------------------------------------


def _suffix(m: int) -> list[int]:
    """out[t] = sum_{j >= t} C(m, j) for t = 0..m+1."""
    out = [0] * (m + 2)
    for j in range(m, -1, -1):
        out[j] = out[j + 1] + comb(m, j)
    return out


def _tail(suf: list[int], t: int) -> int:
    if t <= 0:
        return suf[0]
    return suf[t] if t < len(suf) else 0


def _require_positive_star(s: StarGame) -> None:
    if not s.has_positive_labels():
        raise ModelValidityError("non-oblivious models need positive labels")


def _center_bit(s: StarGame, l: int, r: int, xc: int) -> tuple[bool, int]:
    active = l + r >= s.fc
    p = l + (s.R if active else r)
    q = s.L + s.R - p
    if p >= s.fc and q < s.fc:
        return active, 1
    if q >= s.fc and p < s.fc:
        return active, 0
    return active, xc


def nonoblivious_star_satisfactions(s: StarGame, player_rule: str = "restricted") -> dict[str, int]:
    """Sat per class ('L', 'R', 'I', 'c', 'F') in the non-oblivious model; positive labels only.

    With ``player_rule='literal'`` a reciprocal's bit is read from F(X(x)),
    so it is also active whenever the center votes 1 initially.
    """
    _require_positive_star(s)
    if player_rule not in PLAYER_RULES:
        raise InputError(f"player_rule must be one of {PLAYER_RULES}")
    L, R, I, F = s.L, s.R, s.I, s.F
    q = s.quota
    suf_i, suf_i1 = _suffix(I), _suffix(max(I - 1, 0))
    total_i = 1 << I
    sat = {"L": 0, "R": 0, "I": 0, "c": 0}
    for l in range(L + 1):
        for r in range(R + 1):
            for xc in (0, 1):
                active, cbit = _center_bit(s, l, r, xc)
                recip = R if active or (player_rule == "literal" and xc) else r
                base = l + recip + cbit + (F if active else 0)
                t = q - base  # winners need at least t independents
                win_i = _tail(suf_i, t)
                lose_i = total_i - win_i
                w_lr = C(L, l) * C(R, r)
                if L:
                    sat["L"] += (C(L - 1, l - 1) * win_i + C(L - 1, l) * lose_i) * C(R, r)
                if R:
                    sat["R"] += (C(R - 1, r - 1) * win_i + C(R - 1, r) * lose_i) * C(L, l)
                if I:
                    with_i = _tail(suf_i1, t - 1)
                    without_i = (1 << (I - 1)) - _tail(suf_i1, t)
                    sat["I"] += w_lr * (with_i + without_i)
                sat["c"] += w_lr * (win_i if xc else lose_i)
    out = {k: v << F for k, v in sat.items()}
    out["F"] = 1 << (s.n - 1)
    return out


def sat_nonoblivious_star(s: StarGame, i: int, player_rule: str = "restricted") -> int:
    cls, _ = s.vertex_class(i)
    return nonoblivious_star_satisfactions(s, player_rule)[cls]


def center_corrections(s: StarGame) -> tuple[int, int]:
    """(A0, B1): vectors where the center's own bit flips the oblivious outcome.

    A0: x_c = 0, p_c and q_c both reach f(c), the oblivious count is exactly q.
    B1: x_c = 1, p_c and q_c both fall short of f(c), the oblivious count is q - 1.
    """
    _require_positive_star(s)
    L, R, I, F, fc, q = s.L, s.R, s.I, s.F, s.fc, s.quota
    a0 = 0
    for l in range(L + 1):
        if L - l < fc:
            continue
        reach = sum(C(R, r) for r in range(max(fc - l, 0), R + 1))
        a0 += C(L, l) * reach * C(I, q - l - R - F - 1)
    b1 = 0
    for j in range(min(fc, L + R + 1)):
        if L + R - j < fc:
            b1 += C(L + R, j) * C(I, q - 1 - j)
    return a0 << F, b1 << F


__all__ = [
    "ExtendedStarGame",
    "StarGame",
    "StarRecognition",
    "center_corrections",
    "coalition_swings",
    "extended_star_expansion_count",
    "extended_star_expansion_counts",
    "nonoblivious_star_satisfactions",
    "normalize_star",
    "recognize_star",
    "sat_nonoblivious_star",
    "sat_oblivious_star",
    "star_expansion_count",
    "star_expansion_counts",
    "star_from_dict",
    "star_winning_losing",
]
