"""Two-sided ideals in the free algebra: deglex normal forms, degree
truncated overlap completion, membership verdicts, a linear-span oracle
and an on-disk cache for completed systems.

The coefficient arithmetic is duck-typed: the same engine runs over Q(q)
(RatFunc) and over Q after specializing q (flint fmpq).
"""

from __future__ import annotations

import hashlib
import heapq
import itertools
import os
import re
import time
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from .errors import (AlphabetMismatch, BudgetExhausted, FormatVersionMismatch, IoFailure, PoleAtPoint,
                     ProvenanceMismatch, TooLarge)
from .ncpoly import Alphabet, NcPoly, Word, alphabet, word_key

FORMAT_HEADER = "AWGB/1"
ORDER_ID = "deglex"

INCONCLUSIVE = "Inconclusive"
IN_IDEAL = "InIdeal"


def _inv(c):
    return c.inv() if hasattr(c, "inv") else 1 / c


def _neg_key(w: Word):
    # heapq is a min-heap; this key pops the deglex-largest word first
    return (-len(w), tuple(-x for x in w))


def word_less(u: Word, v: Word) -> bool:
    return word_key(u) < word_key(v)


class Rule:
    __slots__ = ("lw", "tail", "rid", "alive")

    def __init__(self, lw: Word, tail: List[Tuple[Word, object]], rid: int):
        self.lw = lw
        self.tail = tail          # lw == sum(c * w for w, c in tail) modulo the ideal
        self.rid = rid
        self.alive = True


class Verdict(NamedTuple):
    status: str
    residual: NcPoly
    degree_bound_used: int

    @property
    def in_ideal(self) -> bool:
        return self.status == IN_IDEAL


class RewriteSystem:
    """Inter-reduced rule set with resumable truncated completion."""

    def __init__(self, alph: Alphabet, provenance: str = "", one=None):
        self.alph = alph
        self.provenance = provenance
        self.rules: List[Rule] = []
        self.index: Dict[Word, Rule] = {}
        self._lens: List[int] = []
        self.maxdeg = 0
        self.complete_upto = 0
        self._pairs: list = []
        self._next_id = 0
        if one is None:
            from .coeff import ONE as one
        self._one = one
        self.stats = {"pairs": 0, "reductions": 0}

    # rules

    def live_rules(self) -> List[Rule]:
        return [r for r in self.rules if r.alive]

    def __len__(self):
        return len(self.index)

    def _refresh_lens(self):
        self._lens = sorted({len(w) for w in self.index})

    def _match(self, w: Word):
        lens = self._lens
        get = self.index.get
        n = len(w)
        for pos in range(n):
            for L in lens:
                if pos + L > n:
                    break
                r = get(w[pos:pos + L])
                if r is not None:
                    return pos, r
        return None

    # reduction

    def reduce_terms(self, terms: Dict[Word, object], max_steps: Optional[int] = None) -> Dict[Word, object]:
        work = dict(terms)
        heap = [(_neg_key(w), w) for w in work]
        heapq.heapify(heap)
        result = {}
        steps = 0
        match = self._match
        while heap:
            _, w = heapq.heappop(heap)
            c = work.pop(w, None)
            if c is None:
                continue
            m = match(w)
            if m is None:
                result[w] = c
                continue
            steps += 1
            if max_steps is not None and steps > max_steps:
                raise RuntimeError(f"reduction exceeded {max_steps} steps")
            pos, r = m
            u = w[:pos]
            v = w[pos + len(r.lw):]
            for tw, tc in r.tail:
                nw = u + tw + v
                nc = c * tc
                old = work.get(nw)
                if old is None:
                    work[nw] = nc
                    heapq.heappush(heap, (_neg_key(nw), nw))
                else:
                    s = old + nc
                    if s:
                        work[nw] = s
                    else:
                        del work[nw]
        self.stats["reductions"] += 1
        return result

    def reduce(self, p: NcPoly) -> NcPoly:
        if p.alph != self.alph:
            raise AlphabetMismatch(f"{p.alph!r} vs system over {self.alph!r}")
        return NcPoly(self.alph, self.reduce_terms(p.terms))

    # completion

    def _new_rule(self, terms: Dict[Word, object]) -> Rule:
        lw = max(terms, key=word_key)
        inv = _inv(terms[lw])
        tail = [(w, -(c * inv)) for w, c in terms.items() if w != lw]
        tail.sort(key=lambda t: word_key(t[0]), reverse=True)
        r = Rule(lw, tail, self._next_id)
        self._next_id += 1
        return r

    def _push_pairs(self, r: Rule):
        for s in self.live_rules():
            self._overlaps(r, s)
            if s is not r:
                self._overlaps(s, r)

    def _overlaps(self, a: Rule, b: Rule):
        la, lb = a.lw, b.lw
        for k in range(1, min(len(la), len(lb))):
            if la[-k:] == lb[:k]:
                w = la + lb[k:]
                heapq.heappush(self._pairs, (len(w), w, a.rid, b.rid, k, a, b))

    def _s_poly(self, a: Rule, b: Rule, k: int) -> Dict[Word, object]:
        # a.lw * rest == left * b.lw, both equal to the overlap word
        rest = b.lw[k:]
        left = a.lw[:-k]
        t: Dict[Word, object] = {}
        for w, c in a.tail:
            t[w + rest] = c
        for w, c in b.tail:
            nw = left + w
            old = t.get(nw)
            if old is None:
                t[nw] = -c
            else:
                s = old - c
                if s:
                    t[nw] = s
                else:
                    del t[nw]
        return t

    def add(self, terms: Dict[Word, object]) -> bool:
        """Reduce ``terms``; adjoin the result as a rule if nonzero."""
        todo = [terms]
        added = False
        while todo:
            nf = self.reduce_terms(todo.pop())
            if not nf:
                continue
            r = self._new_rule(nf)
            lw = r.lw
            for s in list(self.index.values()):
                if len(s.lw) > len(lw) and _contains(s.lw, lw):
                    s.alive = False
                    del self.index[s.lw]
                    t = {w: -c for w, c in s.tail}
                    t[s.lw] = self._one
                    todo.append(t)
            self.rules.append(r)
            self.index[lw] = r
            self._refresh_lens()
            self._push_pairs(r)
            added = True
        return added

    def run(self, maxdeg: int, budget: Optional[float] = None, deadline: Optional[float] = None):
        """Process every pending overlap of length <= maxdeg."""
        if deadline is None and budget is not None:
            deadline = time.monotonic() + budget
        self.maxdeg = max(self.maxdeg, maxdeg)
        pairs = self._pairs
        while pairs:
            L, w, ia, ib, k, a, b = pairs[0]
            if not (a.alive and b.alive):
                heapq.heappop(pairs)
                continue
            if L > maxdeg:
                break
            if deadline is not None and time.monotonic() > deadline:
                self.complete_upto = self._processed_bound(maxdeg)
                raise BudgetExhausted(
                    f"completion stopped at overlap degree {L}; complete through {self.complete_upto}",
                    system=self)
            heapq.heappop(pairs)
            self.stats["pairs"] += 1
            self.add(self._s_poly(a, b, k))
        self.complete_upto = maxdeg
        self.interreduce_tails()
        return self

    def _processed_bound(self, maxdeg: int) -> int:
        live = [p[0] for p in self._pairs if p[5].alive and p[6].alive]
        lo = min(live, default=maxdeg + 1)
        return min(maxdeg, lo - 1)

    def interreduce_tails(self):
        for r in self.live_rules():
            if not r.tail:
                continue
            nf = self.reduce_terms(dict(r.tail))
            r.tail = sorted(nf.items(), key=lambda t: word_key(t[0]), reverse=True)

    def pending_degrees(self) -> List[int]:
        return sorted({p[0] for p in self._pairs if p[5].alive and p[6].alive})

    def regenerate_pairs(self):
        """Rebuild the overlap queue, keeping only unprocessed degrees."""
        self._pairs = []
        live = self.live_rules()
        for a in live:
            for b in live:
                la, lb = a.lw, b.lw
                for k in range(1, min(len(la), len(lb))):
                    if la[-k:] == lb[:k]:
                        w = la + lb[k:]
                        if len(w) > self.complete_upto:
                            self._pairs.append((len(w), w, a.rid, b.rid, k, a, b))
        heapq.heapify(self._pairs)

    # views

    def rule_polys(self) -> List[Tuple[Word, NcPoly]]:
        out = []
        for r in self.live_rules():
            out.append((r.lw, NcPoly(self.alph, dict(r.tail))))
        return out

    def same_rules(self, other: "RewriteSystem") -> bool:
        mine = [(r.lw, dict(r.tail)) for r in self.live_rules()]
        theirs = [(r.lw, dict(r.tail)) for r in other.live_rules()]
        return mine == theirs


def _contains(big: Word, small: Word) -> bool:
    n = len(small)
    for i in range(len(big) - n + 1):
        if big[i:i + n] == small:
            return True
    return False


def system_from_polys(alph: Alphabet, polys: Iterable[NcPoly], provenance: str = "", one=None) -> RewriteSystem:
    sys = RewriteSystem(alph, provenance, one=one)
    for p in polys:
        if p.alph != alph:
            raise AlphabetMismatch(f"{p.alph!r} vs {alph!r}")
        sys.add(p.terms)
    return sys


def complete(rels, maxdeg: int, budget: Optional[float] = None) -> RewriteSystem:
    """Truncated completion of a RelationSet.

    Raises BudgetExhausted (carrying the partial system) when ``budget``
    seconds run out.
    """
    deadline = time.monotonic() + budget if budget is not None else None
    sys = system_from_polys(rels.alph, rels.polys(), rels.provenance())
    return sys.run(maxdeg, deadline=deadline)


def escalate(sys: RewriteSystem, maxdeg: int, budget: Optional[float] = None) -> RewriteSystem:
    """Resume completion of ``sys`` up to a larger degree."""
    return sys.run(maxdeg, budget=budget)


def reduce(p: NcPoly, sys: RewriteSystem) -> NcPoly:
    return sys.reduce(p)


def member(p: NcPoly, sys: RewriteSystem) -> Verdict:
    """InIdeal iff p reduces to zero; Inconclusive otherwise."""
    r = sys.reduce(p)
    return Verdict(IN_IDEAL if r.is_zero() else INCONCLUSIVE, r, sys.complete_upto)


# independent linear-algebra oracle

SPAN_ROW_CAP = 400_000


def _words_upto(nletters: int, d: int):
    for L in range(d + 1):
        yield from itertools.product(range(nletters), repeat=L)


def span_member(p: NcPoly, rels, maxdeg: int, cap: int = SPAN_ROW_CAP) -> bool:
    """Is p in span{u r v : r in rels, deg(u r v) <= maxdeg}?

    Plain sparse Gaussian elimination on the Macaulay matrix; no rewriting
    and no overlaps, so it shares no logic with the completion engine.
    """
    alph = rels.alph
    if p.alph != alph:
        raise AlphabetMismatch(f"{p.alph!r} vs {alph!r}")
    if p.degree() > maxdeg:
        raise ValueError("polynomial degree exceeds the span bound")
    nl = len(alph)
    polys = rels.polys()
    count = 0
    for r in polys:
        room = maxdeg - r.degree()
        if room < 0:
            continue
        count += sum((k + 1) * nl ** k for k in range(room + 1))
    if count > cap:
        raise TooLarge(f"{count} rows exceed the cap of {cap}")

    pivots: Dict[Word, Dict[Word, object]] = {}

    def eliminate(row: Dict[Word, object], stop_on_free: bool):
        row = dict(row)
        done = set()
        while True:
            cands = [w for w in row if w not in done]
            if not cands:
                return row
            w = max(cands, key=word_key)
            piv = pivots.get(w)
            if piv is None:
                if stop_on_free:
                    return row
                done.add(w)
                continue
            c = row[w]
            for pw, pc in piv.items():
                v = row.get(pw)
                nv = -c * pc if v is None else v - c * pc
                if nv:
                    row[pw] = nv
                else:
                    row.pop(pw, None)

    def insert(row: Dict[Word, object]):
        row = eliminate(row, stop_on_free=True)
        if not row:
            return
        lw = max(row, key=word_key)
        inv = _inv(row[lw])
        pivots[lw] = {w: c * inv for w, c in row.items()}
        # keep earlier pivots free of the new leading word
        for other_lw, other in pivots.items():
            if other_lw != lw and lw in other:
                c = other[lw]
                for pw, pc in pivots[lw].items():
                    v = other.get(pw)
                    nv = -c * pc if v is None else v - c * pc
                    if nv:
                        other[pw] = nv
                    else:
                        other.pop(pw, None)

    for r in polys:
        room = maxdeg - r.degree()
        if room < 0:
            continue
        for tot in range(room + 1):
            for lu in range(tot + 1):
                for u in itertools.product(range(nl), repeat=lu):
                    for v in itertools.product(range(nl), repeat=tot - lu):
                        insert({u + w + v: c for w, c in r.terms.items()})
    rest = eliminate(p.terms, stop_on_free=True)
    return not rest


# specialization

def specialize_poly(p: NcPoly, q0) -> NcPoly:
    """Evaluate every coefficient at q = q0 (exact rational, flint fmpq)."""
    from flint import fmpq
    from fractions import Fraction
    from .coeff import check_specialization
    f = check_specialization(q0)
    x = fmpq(f.numerator, f.denominator)
    return p.map_coeffs(lambda c: c._eval_fmpq(x))


def specialized_system(rels, q0, maxdeg: int, budget: Optional[float] = None) -> RewriteSystem:
    from flint import fmpq
    polys = [specialize_poly(p, q0) for p in rels.polys()]
    sys = system_from_polys(rels.alph, polys, rels.provenance() + f"@{q0}", one=fmpq(1))
    return sys.run(maxdeg, budget=budget)


def specialization_contradictions(polys: Sequence[NcPoly], rels, q0s, maxdeg: int,
                                  systems: Optional[dict] = None) -> List[Tuple[object, int]]:
    """(q0, index) for every element that fails to vanish modulo the ideal
    specialized at q0.  Elements with a pole at q0 are skipped.  ``systems``
    caches specialized systems across calls."""
    systems = {} if systems is None else systems
    bad = []
    for q0 in q0s:
        key = (rels.provenance(), q0, maxdeg)
        if key not in systems:
            systems[key] = specialized_system(rels, q0, maxdeg)
        sys = systems[key]
        for x, p in enumerate(polys):
            try:
                sp = specialize_poly(p, q0)
            except PoleAtPoint:
                continue
            if not sys.reduce(sp).is_zero():
                bad.append((q0, x))
    return bad


# persistence

_LETTER = re.compile(r"a\[(\d+),(\d+)\]|C\[(\d+)\.\.(\d+)\]")


def _parse_word(alph: Alphabet, s: str) -> Word:
    out = []
    pos = 0
    s = s.strip()
    if s == "1":
        return ()
    while pos < len(s):
        m = _LETTER.match(s, pos)
        if not m:
            raise FormatVersionMismatch(f"bad word text {s!r}")
        i, j = (m.group(1), m.group(2)) if m.group(1) else (m.group(3), m.group(4))
        out.append(alph.letter((int(i), int(j))))
        pos = m.end()
    return tuple(out)


def sys_dumps(sys: RewriteSystem) -> str:
    lines = [
        FORMAT_HEADER,
        f"context {sys.alph.kind} {sys.alph.n} {ORDER_ID}",
        f"provenance {sys.provenance}",
        f"maxdeg {sys.maxdeg}",
        f"complete_upto {sys.complete_upto}",
        f"rules {len(sys.live_rules())}",
    ]
    for lw, tail in sys.rule_polys():
        lines.append(f"{sys.alph.word_str(lw)}\t{tail}")
    body = "\n".join(lines) + "\n"
    digest = hashlib.sha256(body.encode()).hexdigest()
    return body + f"checksum {digest}\n"


def sys_save(sys: RewriteSystem, path) -> None:
    text = sys_dumps(sys)
    tmp = f"{path}.tmp{os.getpid()}"
    try:
        d = os.path.dirname(os.fspath(path))
        if d:
            os.makedirs(d, exist_ok=True)
        with open(tmp, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except OSError as e:
        raise IoFailure(f"cannot write {path}: {e}") from e


def sys_loads(text: str, kind: Optional[str] = None, n: Optional[int] = None,
              provenance: Optional[str] = None) -> RewriteSystem:
    from .parser import parse_expr
    lines = text.split("\n")
    if not lines or lines[0] != FORMAT_HEADER:
        raise FormatVersionMismatch(f"expected header {FORMAT_HEADER!r}")
    if len(lines) < 8 or lines[-1] != "" or not lines[-2].startswith("checksum "):
        raise FormatVersionMismatch("missing checksum trailer (truncated file?)")
    body = "\n".join(lines[:-2]) + "\n"
    if hashlib.sha256(body.encode()).hexdigest() != lines[-2].split(" ", 1)[1]:
        raise FormatVersionMismatch("checksum mismatch (corrupt or truncated file)")
    try:
        _, fkind, fn, order = lines[1].split(" ")
        fprov = lines[2].split(" ", 1)[1] if " " in lines[2] else ""
        maxdeg = int(lines[3].split(" ")[1])
        upto = int(lines[4].split(" ")[1])
        nrules = int(lines[5].split(" ")[1])
    except (ValueError, IndexError) as e:
        raise FormatVersionMismatch(f"malformed header: {e}") from e
    if order != ORDER_ID:
        raise ProvenanceMismatch(f"term order {order!r} differs from {ORDER_ID!r}")
    if (kind is not None and fkind != kind) or (n is not None and int(fn) != n):
        raise ProvenanceMismatch(f"file context {fkind} {fn} differs from requested {kind} {n}")
    if provenance is not None and fprov != provenance:
        raise ProvenanceMismatch("provenance hash differs from the requested relation set")
    alph = alphabet(fkind, int(fn))
    rule_lines = lines[6:-2]
    if len(rule_lines) != nrules:
        raise FormatVersionMismatch(f"expected {nrules} rules, found {len(rule_lines)}")
    sys = RewriteSystem(alph, fprov)
    for ln in rule_lines:
        ws, ts = ln.split("\t")
        lw = _parse_word(alph, ws)
        tail = parse_expr(ts, alph)
        r = Rule(lw, sorted(tail.terms.items(), key=lambda t: word_key(t[0]), reverse=True), sys._next_id)
        sys._next_id += 1
        sys.rules.append(r)
        sys.index[lw] = r
    sys._refresh_lens()
    sys.maxdeg = maxdeg
    sys.complete_upto = upto
    sys.regenerate_pairs()
    return sys


def sys_load(path, kind: Optional[str] = None, n: Optional[int] = None,
             provenance: Optional[str] = None) -> RewriteSystem:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise IoFailure(f"cannot read {path}: {e}") from e
    return sys_loads(text, kind, n, provenance)


# escalation and caching

class IdealOracle:
    """Membership verdicts with the +1 degree escalation ladder.

    Starts from a system complete through ``maxdeg``; an Inconclusive
    verdict triggers resumed completion one degree at a time until the
    element reduces to zero, ``cap`` is reached or the budget runs out.
    """

    def __init__(self, rels, maxdeg: int, cap: Optional[int] = None, budget: Optional[float] = None,
                 system: Optional[RewriteSystem] = None, cache_dir=None):
        self.rels = rels
        self.cap = max(maxdeg, cap if cap is not None else maxdeg)
        self.deadline = time.monotonic() + budget if budget is not None else None
        self.cache_dir = cache_dir
        self.exhausted = False
        if system is None:
            try:
                system = cached_system(rels, maxdeg, cache_dir, deadline=self.deadline)
            except BudgetExhausted as e:
                self.exhausted = True
                system = e.system
        elif system.complete_upto < maxdeg:
            self._grow(system, maxdeg)
        self.sys = system

    def _grow(self, sys: RewriteSystem, d: int):
        try:
            sys.run(d, deadline=self.deadline)
        except BudgetExhausted:
            self.exhausted = True
        if self.cache_dir is not None:
            save_to_cache(sys, self.cache_dir)

    def member(self, p: NcPoly) -> Verdict:
        v = member(p, self.sys)
        while (not v.in_ideal and not self.exhausted and self.sys.complete_upto < self.cap):
            self._grow(self.sys, self.sys.complete_upto + 1)
            v = member(p, self.sys)
        return v

    @property
    def complete_upto(self) -> int:
        return self.sys.complete_upto


def cache_path(cache_dir, kind: str, n: int, provenance: str) -> str:
    return os.path.join(os.fspath(cache_dir), f"{kind}{n}-{provenance[:16]}.awgb")


def save_to_cache(sys: RewriteSystem, cache_dir) -> str:
    path = cache_path(cache_dir, sys.alph.kind, sys.alph.n, sys.provenance)
    sys_save(sys, path)
    return path


def cached_system(rels, maxdeg: int, cache_dir=None, deadline: Optional[float] = None) -> RewriteSystem:
    """Completion through ``maxdeg``, reusing and refreshing a cache file."""
    prov = rels.provenance()
    sys = None
    if cache_dir is not None:
        path = cache_path(cache_dir, rels.alph.kind, rels.alph.n, prov)
        if os.path.exists(path):
            try:
                sys = sys_load(path, rels.alph.kind, rels.alph.n, prov)
            except (FormatVersionMismatch, ProvenanceMismatch, IoFailure):
                sys = None
    if sys is None:
        sys = system_from_polys(rels.alph, rels.polys(), prov)
    if sys.complete_upto < maxdeg:
        sys.run(maxdeg, deadline=deadline)
        if cache_dir is not None:
            save_to_cache(sys, cache_dir)
    return sys
