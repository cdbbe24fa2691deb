"""Nondeterministic parity automata with priorities on transitions.

Acceptance is max-even: a run is accepting iff the highest priority seen
infinitely often is even.  States and symbols are dense integer indices;
the alphabet maps symbol indices to string tokens.
"""

from dataclasses import dataclass, field, replace
from functools import cached_property

import numpy as np

from .errors import ParseError, ValidationError


@dataclass(frozen=True)
class ParityAutomaton:
    alphabet: tuple
    state_count: int
    initial: int
    transitions: tuple  # (src, symbol, dst, priority)
    max_priority: int
    name: str = field(default="A", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "transitions", tuple(tuple(int(x) for x in t) for t in self.transitions))

    @cached_property
    def successors(self):
        """``successors[q][s]`` is the list of ``(dst, priority)`` pairs."""
        table = [[[] for _ in self.alphabet] for _ in range(self.state_count)]
        for src, sym, dst, prio in sorted(self.transitions):
            table[src][sym].append((dst, prio))
        return table

    def symbol_index(self, token):
        try:
            return self.alphabet.index(token)
        except ValueError:
            raise ValidationError(f"symbol {token!r} not in alphabet") from None

    @property
    def priorities(self):
        return sorted({t[3] for t in self.transitions})


@dataclass(frozen=True)
class UPWord:
    """The ultimately periodic word ``prefix . period^omega`` (symbol indices)."""

    prefix: tuple
    period: tuple

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))
        object.__setattr__(self, "period", tuple(self.period))
        if not self.period:
            raise ValidationError("period of an ultimately periodic word must be nonempty")


def validate(a):
    if a.state_count < 1:
        raise ValidationError("automaton needs at least one state")
    if len(set(a.alphabet)) != len(a.alphabet):
        raise ValidationError("duplicate symbol in alphabet")
    for tok in a.alphabet:
        if not isinstance(tok, str) or not tok or any(c.isspace() for c in tok):
            raise ValidationError(f"invalid symbol token {tok!r}")
    if not 0 <= a.initial < a.state_count:
        raise ValidationError(f"state index out of range: initial {a.initial}")
    if a.max_priority < 0:
        raise ValidationError("max_priority must be nonnegative")
    seen = set()
    for t in a.transitions:
        src, sym, dst, prio = t
        if not (0 <= src < a.state_count and 0 <= dst < a.state_count):
            raise ValidationError(f"state index out of range in transition {t}")
        if not 0 <= sym < len(a.alphabet):
            raise ValidationError(f"symbol index out of range in transition {t}")
        if not 0 <= prio <= a.max_priority:
            raise ValidationError(f"priority {prio} above max_priority {a.max_priority}")
        if t in seen:
            raise ValidationError(f"duplicate transition {t}")
        seen.add(t)


def is_deterministic(a):
    keys = [(t[0], t[1]) for t in a.transitions]
    return len(keys) == len(set(keys))


def is_complete(a):
    return {(t[0], t[1]) for t in a.transitions} == {
        (q, s) for q in range(a.state_count) for s in range(len(a.alphabet))}


def complete(a):
    """Route missing (state, symbol) pairs to a fresh rejecting sink."""
    if is_complete(a):
        return a
    sink = a.state_count
    have = {(t[0], t[1]) for t in a.transitions}
    extra = [(q, s, sink, 1) for q in range(a.state_count)
             for s in range(len(a.alphabet)) if (q, s) not in have]
    extra += [(sink, s, sink, 1) for s in range(len(a.alphabet))]
    return replace(a, state_count=sink + 1, transitions=a.transitions + tuple(extra),
                   max_priority=max(a.max_priority, 1))


def _compose(x, y):
    """Relational composition on (state, state, exact max priority) tensors."""
    n, _, d = x.shape
    out = np.zeros_like(x)
    xi = x.astype(np.int64)
    yi = y.astype(np.int64)
    for p in range(d):
        if not x[:, :, p].any():
            continue
        for r in range(d):
            if not y[:, :, r].any():
                continue
            out[:, :, max(p, r)] |= (xi[:, :, p] @ yi[:, :, r]) > 0
    return out


def member_up(a, w):
    """Does ``a`` accept ``prefix . period^omega``?

    Lasso-based: the states reachable after the prefix, the one-period
    relation T(q, q', p) = "some path labelled by the period goes from q to
    q' with maximum priority exactly p", closed under composition; accept
    iff a state reachable from the prefix set loops on itself with an even
    maximum.
    """
    nsym = len(a.alphabet)
    for s in w.prefix + w.period:
        if not 0 <= s < nsym:
            raise ValidationError(f"symbol index {s} not in alphabet")
    n, d = a.state_count, a.max_priority + 1
    succ = a.successors

    current = {a.initial}
    for s in w.prefix:
        current = {dst for q in current for dst, _ in succ[q][s]}
    if not current:
        return False

    # one period, tracking the running maximum (-1 = nothing read yet)
    step = {(q, q, -1) for q in range(n)}
    for s in w.period:
        step = {(q, dst, max(m, p)) for q, r, m in step for dst, p in succ[r][s]}
    rel = np.zeros((n, n, d), dtype=bool)
    for q, r, m in step:
        rel[q, r, m] = True

    closure = rel
    while True:
        nxt = closure | _compose(closure, rel)
        if (nxt == closure).all():
            break
        closure = nxt

    reach = np.zeros(n, dtype=bool)
    reach[list(current)] = True
    reach |= closure[reach].any(axis=(0, 2))
    diag = closure[np.arange(n), np.arange(n)]  # (n, d)
    even_loop = diag[:, 0::2].any(axis=1)
    return bool((reach & even_loop).any())


def parity_to_buchi(a):
    """Language-equivalent automaton with priorities in {1, 2}.

    Layer 0 is a copy of ``a`` with every priority set to 1.  For every even
    priority 2k used by ``a`` there is a copy of the states that may be
    entered on any transition (priority 1) and inside which only transitions
    of priority <= 2k survive; those of priority exactly 2k get priority 2.
    """
    used = set(a.priorities)
    if used and all(p % 2 == 0 for p in used):
        # every infinite run is accepting
        trans = tuple((s, x, d, 2) for s, x, d, _ in a.transitions)
        return replace(a, transitions=trans, max_priority=2, name=a.name + "_buchi")
    evens = sorted(p for p in used if p % 2 == 0)
    n = a.state_count
    trans = set()
    for src, sym, dst, prio in a.transitions:
        trans.add((src, sym, dst, 1))
        for layer, k2 in enumerate(evens, start=1):
            trans.add((src, sym, layer * n + dst, 1))
            if prio <= k2:
                trans.add((layer * n + src, sym, layer * n + dst, 2 if prio == k2 else 1))
    return ParityAutomaton(a.alphabet, n * (len(evens) + 1), a.initial, tuple(sorted(trans)),
                           2, name=a.name + "_buchi")


def renumber(a, perm):
    """Copy of ``a`` with state q renamed to ``perm[q]``."""
    trans = tuple((perm[s], x, perm[d], p) for s, x, d, p in a.transitions)
    return replace(a, initial=perm[a.initial], transitions=trans)


# ------------------------------------------------------------------ text format

def _tokens(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _int(tok, lineno):
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", lineno) from None


def parse_automaton(text):
    name = alphabet = states = initial = None
    trans = []
    ended = False
    for lineno, parts in _tokens(text):
        if ended:
            raise ParseError("content after 'end'", lineno)
        key, args = parts[0], parts[1:]
        if key == "pa":
            if len(args) != 1:
                raise ParseError("expected 'pa <name>'", lineno)
            name = args[0]
        elif name is None:
            raise ParseError("file must start with 'pa <name>'", lineno)
        elif key == "alphabet":
            alphabet = tuple(args)
        elif key == "states" and len(args) == 1:
            states = _int(args[0], lineno)
        elif key == "initial" and len(args) == 1:
            initial = _int(args[0], lineno)
        elif key == "trans":
            if len(args) != 4:
                raise ParseError("expected 'trans <src> <tok> <dst> <prio>'", lineno)
            if alphabet is None:
                raise ParseError("'trans' before 'alphabet'", lineno)
            if args[1] not in alphabet:
                raise ParseError(f"symbol {args[1]!r} not in alphabet", lineno)
            trans.append((_int(args[0], lineno), alphabet.index(args[1]),
                          _int(args[2], lineno), _int(args[3], lineno)))
        elif key == "end":
            ended = True
        else:
            raise ParseError(f"unexpected line {' '.join(parts)!r}", lineno)
    if not ended:
        raise ParseError("missing 'end'")
    if None in (alphabet, states, initial):
        raise ParseError("missing alphabet, states or initial")
    max_prio = max((t[3] for t in trans), default=0)
    a = ParityAutomaton(alphabet, states, initial, tuple(trans), max_prio, name=name)
    validate(a)
    return a


def emit_automaton(a):
    lines = [f"pa {a.name}", "alphabet " + " ".join(a.alphabet),
             f"states {a.state_count}", f"initial {a.initial}"]
    for src, sym, dst, prio in sorted(a.transitions):
        lines.append(f"trans {src} {a.alphabet[sym]} {dst} {prio}")
    lines.append("end")
    return "\n".join(lines) + "\n"
