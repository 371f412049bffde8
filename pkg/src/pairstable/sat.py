"""CNF formulas in DIMACS form, (2,2)-E3-SAT generation and brute-force SAT."""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass

from .errors import ClauseArity, InfeasibleN, ParseError, SizeGuard


@dataclass(frozen=True)
class Formula:
    """CNF over variables ``1..num_vars``; literals are signed integers."""

    num_vars: int
    clauses: tuple[tuple[int, ...], ...]

    def evaluate(self, assignment) -> bool:
        return all(any((lit > 0) == bool(assignment[abs(lit) - 1]) for lit in clause) for clause in self.clauses)

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.num_vars} {len(self.clauses)}"]
        lines += [" ".join(str(lit) for lit in clause) + " 0" for clause in self.clauses]
        return "\n".join(lines) + "\n"


def parse_dimacs(text: str, arity: int | None = 3) -> Formula:
    """Parse a DIMACS CNF document.

    Clauses may span lines and are terminated by ``0``.  With ``arity`` set,
    every clause must have exactly that many literals.
    """
    header = None
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if header is not None or len(parts) != 4 or parts[1] != "cnf":
                raise ParseError(f"line {lineno}: bad problem line {line!r}")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise ParseError(f"line {lineno}: bad problem line {line!r}") from None
            continue
        if header is None:
            raise ParseError(f"line {lineno}: clause before problem line")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise ParseError(f"line {lineno}: bad literal {tok!r}") from None
            if lit == 0:
                clauses.append(tuple(current))
                current = []
            else:
                if abs(lit) > header[0]:
                    raise ParseError(f"line {lineno}: literal {lit} exceeds variable count")
                current.append(lit)
    if header is None:
        raise ParseError("missing 'p cnf' line")
    if current:
        raise ParseError("last clause is not terminated by 0")
    if len(clauses) != header[1]:
        raise ParseError(f"header announces {header[1]} clauses, found {len(clauses)}")
    if arity is not None:
        for k, clause in enumerate(clauses, 1):
            if len(clause) != arity:
                raise ClauseArity(f"clause {k} has {len(clause)} literals, expected {arity}")
    return Formula(header[0], tuple(clauses))


def validate_22e3(f: Formula) -> list[str]:
    """Reasons ``f`` is not (2,2)-E3-SAT; empty when it is."""
    problems = []
    for k, clause in enumerate(f.clauses, 1):
        if len(clause) != 3:
            problems.append(f"clause {k} has {len(clause)} literals")
    if 3 * len(f.clauses) != 4 * f.num_vars:
        problems.append(f"{len(f.clauses)} clauses cannot hold 4 occurrences of {f.num_vars} variables")
    counts = Counter(lit for clause in f.clauses for lit in clause)
    for v in range(1, f.num_vars + 1):
        pos, neg = counts[v], counts[-v]
        if pos != 2 or neg != 2:
            problems.append(f"variable {v} occurs {pos} times positively and {neg} times negatively")
    return problems


def generate_22e3(n: int, seed: int = 0, max_tries: int = 100_000) -> Formula:
    """Random (2,2)-E3-SAT formula with ``n`` variables and ``4n/3`` clauses.

    The ``4n`` literal occurrences are shuffled into clause slots; shuffles
    that put one variable twice into a clause are redrawn.
    """
    if n < 3 or n % 3:
        raise InfeasibleN(f"n={n}: need a positive multiple of 3")
    rng = random.Random(seed)
    pool = [lit for v in range(1, n + 1) for lit in (v, v, -v, -v)]
    for _ in range(max_tries):
        rng.shuffle(pool)
        clauses = [tuple(pool[i:i + 3]) for i in range(0, len(pool), 3)]
        if all(len({abs(x) for x in c}) == 3 for c in clauses):
            return Formula(n, tuple(clauses))
    raise RuntimeError(f"no valid shuffle found in {max_tries} tries")


def sat_brute(f: Formula, max_vars: int = 30) -> tuple[bool, ...] | None:
    """Lexicographically first satisfying assignment (False before True).

    Variable 1 is the most significant position, so counting upward through
    the bitmasks enumerates assignments in lexicographic order.
    """
    n = f.num_vars
    if n > max_vars:
        raise SizeGuard(f"{n} variables exceed the brute-force limit of {max_vars}")
    masks = []
    for clause in f.clauses:
        pos = neg = 0
        for lit in clause:
            bit = 1 << (n - abs(lit))
            if lit > 0:
                pos |= bit
            else:
                neg |= bit
        masks.append((pos, neg))
    full = (1 << n) - 1
    for a in range(1 << n):
        na = full ^ a
        for pos, neg in masks:
            if not (a & pos or na & neg):
                break
        else:
            return tuple(bool(a >> (n - v) & 1) for v in range(1, n + 1))
    return None
