"""Bounded backward proof search and independent derivation checking.

The rule set is the standard Lambek left/right slash rules plus the five
bang rules: left/right introduction, the two directed permutations of a
banged formula across a block, and contraction of a banged formula.
Search is goal-directed and cut-free; contraction and permutation are
budgeted per branch because unrestricted backward contraction does not
terminate.

``check`` validates every node of a derivation locally against its rule
schema, using the recorded rule data, so it needs no search and accepts
derivations from any source.  ``prove``/``prove_all`` only ever return
derivations that pass ``check``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterator, Optional

from .formulas import (
    Bang,
    Formula,
    Over,
    Sequent,
    Under,
    parse_formula,
    parse_sequent,
    print_sequent,
)

__all__ = [
    "RuleTag",
    "RuleData",
    "Derivation",
    "SearchBudget",
    "DEFAULT_BUDGET",
    "prove",
    "prove_all",
    "check",
    "check_detailed",
    "rule_counts",
    "derivation_to_json",
    "derivation_from_json",
]


class RuleTag(str, Enum):
    AXIOM = "axiom"
    OVER_L = "over_l"
    OVER_R = "over_r"
    UNDER_L = "under_l"
    UNDER_R = "under_r"
    BANG_L = "bang_l"
    BANG_R = "bang_r"
    PERM_1 = "perm1"
    PERM_2 = "perm2"
    CONTR = "contr"


@dataclass(frozen=True)
class RuleData:
    """Positions needed to reconstruct a rule instance.

    principal/split locate the slash formula and its argument block for
    the two left rules (split is the exclusive end of the block for
    over_l, the inclusive start for under_l).  index locates the banged
    formula for bang_l and contr.  moved_from/moved_to are the positions
    of the banged formula in the premise and conclusion of a permutation.
    """

    principal: Optional[int] = None
    split: Optional[int] = None
    index: Optional[int] = None
    moved_from: Optional[int] = None
    moved_to: Optional[int] = None

    def to_json(self) -> dict:
        return {
            key: value
            for key, value in (
                ("principal", self.principal),
                ("split", self.split),
                ("index", self.index),
                ("moved_from", self.moved_from),
                ("moved_to", self.moved_to),
            )
            if value is not None
        }


_NO_DATA = RuleData()


@dataclass(frozen=True)
class Derivation:
    conclusion: Sequent
    rule: RuleTag
    premises: tuple["Derivation", ...] = ()
    data: RuleData = _NO_DATA

    def node_count(self) -> int:
        return 1 + sum(p.node_count() for p in self.premises)


@dataclass(frozen=True)
class SearchBudget:
    """Per-branch limits; a branch is a path from the root to a leaf."""

    max_contractions: int = 1
    max_perm_moves: int = 4
    max_depth: int = 64

    def __post_init__(self) -> None:
        if self.max_contractions < 0 or self.max_perm_moves < 0:
            raise ValueError("contraction and permutation budgets must be >= 0")
        if self.max_depth <= 0:
            raise ValueError("max_depth must be positive")


DEFAULT_BUDGET = SearchBudget()


# ---------------------------------------------------------------------------
# Rule schemata
#
# _premises_for computes, from a conclusion plus rule data, the exact
# premise sequents the schema demands.  The checker compares them against
# the recorded subtrees; the search constructs goals from the same
# function, so search output is valid by construction.


def _premises_for(seq: Sequent, rule: RuleTag, data: RuleData) -> tuple[Sequent, ...]:
    """Premises demanded by the rule instance, or raise ValueError."""
    ante, succ = seq.antecedent, seq.succedent
    n = len(ante)

    if rule is RuleTag.AXIOM:
        if n != 1 or ante[0] != succ:
            raise ValueError("axiom requires a single antecedent equal to the succedent")
        return ()

    if rule is RuleTag.OVER_L:
        p, s = data.principal, data.split
        if p is None or s is None or not (0 <= p < n) or not (p < s <= n):
            raise ValueError("over_l positions out of range")
        if not isinstance(ante[p], Over):
            raise ValueError("over_l principal is not an over formula")
        over: Over = ante[p]
        gamma = ante[p + 1 : s]
        side = ante[:p] + (over.left,) + ante[s:]
        return (Sequent(gamma, over.right), Sequent(side, succ))

    if rule is RuleTag.UNDER_L:
        p, s = data.principal, data.split
        if p is None or s is None or not (0 <= p < n) or not (0 <= s <= p):
            raise ValueError("under_l positions out of range")
        if not isinstance(ante[p], Under):
            raise ValueError("under_l principal is not an under formula")
        under: Under = ante[p]
        gamma = ante[s:p]
        side = ante[:s] + (under.right,) + ante[p + 1 :]
        return (Sequent(gamma, under.left), Sequent(side, succ))

    if rule is RuleTag.OVER_R:
        if not isinstance(succ, Over):
            raise ValueError("over_r needs an over succedent")
        return (Sequent(ante + (succ.right,), succ.left),)

    if rule is RuleTag.UNDER_R:
        if not isinstance(succ, Under):
            raise ValueError("under_r needs an under succedent")
        return (Sequent((succ.left,) + ante, succ.right),)

    if rule is RuleTag.BANG_L:
        i = data.index
        if i is None or not (0 <= i < n) or not isinstance(ante[i], Bang):
            raise ValueError("bang_l index must point at a banged formula")
        body = ante[i].body
        return (Sequent(ante[:i] + (body,) + ante[i + 1 :], succ),)

    if rule is RuleTag.BANG_R:
        if not isinstance(succ, Bang):
            raise ValueError("bang_r needs a banged succedent")
        if not all(isinstance(f, Bang) for f in ante):
            raise ValueError("bang_r requires every antecedent formula banged")
        return (Sequent(ante, succ.body),)

    if rule is RuleTag.CONTR:
        i = data.index
        if i is None or not (0 <= i < n) or not isinstance(ante[i], Bang):
            raise ValueError("contr index must point at a banged formula")
        return (Sequent(ante[: i + 1] + (ante[i],) + ante[i + 1 :], succ),)

    if rule is RuleTag.PERM_1:
        f, t = data.moved_from, data.moved_to
        if f is None or t is None or not (0 <= f < t < n):
            raise ValueError("perm1 must move a formula left across a nonempty block")
        if not isinstance(ante[t], Bang):
            raise ValueError("perm1 moves only banged formulae")
        block = ante[f:t]
        premise = ante[:f] + (ante[t],) + block + ante[t + 1 :]
        return (Sequent(premise, succ),)

    if rule is RuleTag.PERM_2:
        f, t = data.moved_from, data.moved_to
        if f is None or t is None or not (0 <= t < f < n):
            raise ValueError("perm2 must move a formula right across a nonempty block")
        if not isinstance(ante[t], Bang):
            raise ValueError("perm2 moves only banged formulae")
        block = ante[t + 1 : f + 1]
        premise = ante[:t] + block + (ante[t],) + ante[f + 1 :]
        return (Sequent(premise, succ),)

    raise ValueError(f"unknown rule {rule}")


def check_detailed(d: Derivation) -> Optional[str]:
    """First schema violation as a human-readable path, or None if valid."""

    def walk(node: Derivation, path: str) -> Optional[str]:
        try:
            expected = _premises_for(node.conclusion, node.rule, node.data)
        except ValueError as exc:
            return f"{path}: {exc}"
        if len(expected) != len(node.premises):
            return (
                f"{path}: {node.rule.value} expects {len(expected)} premises,"
                f" found {len(node.premises)}"
            )
        for i, (want, premise) in enumerate(zip(expected, node.premises)):
            if premise.conclusion != want:
                return (
                    f"{path}.premises[{i}]: expected {print_sequent(want)},"
                    f" found {print_sequent(premise.conclusion)}"
                )
            failure = walk(premise, f"{path}.premises[{i}]")
            if failure:
                return failure
        return None

    return walk(d, "root")


def check(d: Derivation) -> bool:
    """True iff every node is a legal instance of its rule schema."""
    return check_detailed(d) is None


def rule_counts(d: Derivation) -> dict[RuleTag, int]:
    counts: dict[RuleTag, int] = {}

    def walk(node: Derivation) -> None:
        counts[node.rule] = counts.get(node.rule, 0) + 1
        for premise in node.premises:
            walk(premise)

    walk(d)
    return counts


# ---------------------------------------------------------------------------
# Search


def _candidates(seq: Sequent, contr_left: int, perm_left: int) -> Iterator[tuple[RuleTag, RuleData]]:
    """Rule instances to try, in a fixed priority order.

    Structural rules come before the binary left rules so that searches
    needing contraction or permutation find the economical derivations
    first; permutations are generated as single adjacent transpositions.
    """
    ante, succ = seq.antecedent, seq.succedent
    n = len(ante)

    if n == 1 and ante[0] == succ:
        yield RuleTag.AXIOM, _NO_DATA

    if isinstance(succ, Under):
        yield RuleTag.UNDER_R, _NO_DATA
    elif isinstance(succ, Over):
        yield RuleTag.OVER_R, _NO_DATA
    elif isinstance(succ, Bang) and all(isinstance(f, Bang) for f in ante):
        yield RuleTag.BANG_R, _NO_DATA

    banged = [i for i, f in enumerate(ante) if isinstance(f, Bang)]

    for i in banged:
        yield RuleTag.BANG_L, RuleData(index=i)

    if contr_left > 0:
        for i in banged:
            yield RuleTag.CONTR, RuleData(index=i)

    if perm_left > 0:
        for i in banged:
            if i >= 1:
                yield RuleTag.PERM_1, RuleData(moved_from=i - 1, moved_to=i)
        for i in banged:
            if i <= n - 2:
                yield RuleTag.PERM_2, RuleData(moved_from=i + 1, moved_to=i)

    for p, f in enumerate(ante):
        if isinstance(f, Over):
            for s in range(p + 1, n + 1):
                yield RuleTag.OVER_L, RuleData(principal=p, split=s)
        elif isinstance(f, Under):
            for s in range(p, -1, -1):
                yield RuleTag.UNDER_L, RuleData(principal=p, split=s)


def _search(
    seq: Sequent,
    contr_left: int,
    perm_left: int,
    depth_left: int,
    fail_memo: dict,
) -> Iterator[Derivation]:
    if depth_left <= 0:
        return
    key = (seq, contr_left, perm_left)
    if fail_memo.get(key, -1) >= depth_left:
        return

    found = False
    for rule, data in _candidates(seq, contr_left, perm_left):
        try:
            goals = _premises_for(seq, rule, data)
        except ValueError:
            continue
        c = contr_left - (rule is RuleTag.CONTR)
        p = perm_left - (rule in (RuleTag.PERM_1, RuleTag.PERM_2))
        if not goals:
            found = True
            yield Derivation(seq, rule, (), data)
        elif len(goals) == 1:
            for sub in _search(goals[0], c, p, depth_left - 1, fail_memo):
                found = True
                yield Derivation(seq, rule, (sub,), data)
        else:
            for left in _search(goals[0], c, p, depth_left - 1, fail_memo):
                for right in _search(goals[1], c, p, depth_left - 1, fail_memo):
                    found = True
                    yield Derivation(seq, rule, (left, right), data)
    if not found:
        if fail_memo.get(key, -1) < depth_left:
            fail_memo[key] = depth_left


def prove(seq: Sequent, budget: SearchBudget = DEFAULT_BUDGET) -> Optional[Derivation]:
    """First derivation found within the budget, or None.

    None means "no proof found under this budget"; it is not a claim of
    unprovability.
    """
    return next(
        _search(seq, budget.max_contractions, budget.max_perm_moves, budget.max_depth, {}),
        None,
    )


def prove_all(seq: Sequent, budget: SearchBudget = DEFAULT_BUDGET, limit: int = 10) -> list[Derivation]:
    """Up to ``limit`` structurally distinct derivations, canonically ordered."""
    if limit < 1:
        raise ValueError("limit must be >= 1")
    seen: dict[str, Derivation] = {}
    stream = _search(
        seq, budget.max_contractions, budget.max_perm_moves, budget.max_depth, {}
    )
    for derivation in stream:
        key = json.dumps(derivation_to_json(derivation), sort_keys=True)
        if key not in seen:
            seen[key] = derivation
            if len(seen) >= limit:
                break
    return [seen[key] for key in sorted(seen)]


# ---------------------------------------------------------------------------
# Serialization


def derivation_to_json(d: Derivation) -> dict:
    return {
        "rule": d.rule.value,
        "conclusion": print_sequent(d.conclusion),
        "rule_data": d.data.to_json(),
        "premises": [derivation_to_json(p) for p in d.premises],
    }


def derivation_from_json(obj: dict) -> Derivation:
    data = obj.get("rule_data", {})
    return Derivation(
        conclusion=parse_sequent(obj["conclusion"]),
        rule=RuleTag(obj["rule"]),
        premises=tuple(derivation_from_json(p) for p in obj.get("premises", [])),
        data=RuleData(**data),
    )
