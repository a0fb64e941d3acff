"""String-rewriting oracle for Gamma_m, independent of the closed-form product.

Words are strings over ``xXyYtTzZ`` (capitals are inverses, ``z = [x, y]``).
The rules below only use the defining relations; applied to exhaustion they
produce ``z^k t^c x^i y^j`` with ``k`` then reduced mod ``m^2``.
"""

from __future__ import annotations

from fractions import Fraction

from .tower import TowerElement, normalize, parse_letters

_RULES: list[tuple[str, str]] = []
for _g in "xyzt":
    _RULES += [(_g + _g.upper(), ""), (_g.upper() + _g, "")]
for _g in "xXyYtT":
    _RULES += [(_g + "z", "z" + _g), (_g + "Z", "Z" + _g)]
for _g in "xXyY":
    _RULES += [(_g + "t", "t" + _g.swapcase()), (_g + "T", "T" + _g.swapcase())]
# y^e1 x^e2 = z^(-e1 e2) x^e2 y^e1
_RULES += [("yx", "Zxy"), ("yX", "zXy"), ("Yx", "zxY"), ("YX", "ZXY")]
RULES = tuple(_RULES)


def rewrite(word: str) -> str:
    """Apply the rules until none matches (leftmost-first strategy)."""
    w = word
    while True:
        best = None
        for lhs, rhs in RULES:
            i = w.find(lhs)
            if i >= 0 and (best is None or i < best[0]):
                best = (i, lhs, rhs)
        if best is None:
            return w
        i, lhs, rhs = best
        w = w[:i] + rhs + w[i + len(lhs):]


def _signed(word: str, ch: str) -> int:
    return word.count(ch) - word.count(ch.upper())


def oracle_normal_form(word: str, stage: int) -> tuple[int, int, int, int]:
    """``(k mod m^2, c, i, j)`` for the rewritten word at stage ``m``."""
    letters = word if set(word) <= set("xXyYtTzZ") else "".join(parse_letters(word))
    nf = rewrite(letters)
    return _state_from_string(nf, stage)


def _state_from_string(nf: str, stage: int) -> tuple[int, int, int, int]:
    return (_signed(nf, "z") % (stage * stage), _signed(nf, "t"), _signed(nf, "x"), _signed(nf, "y"))


def _state_string(state: tuple[int, int, int, int]) -> str:
    k, c, i, j = state

    def block(ch, n):
        return ch * n if n >= 0 else ch.upper() * (-n)

    return block("z", k) + block("t", c) + block("x", i) + block("y", j)


def state_to_element(state: tuple[int, int, int, int], stage: int) -> TowerElement:
    k, c, i, j = state
    return TowerElement.from_local(stage, Fraction(k, stage * stage), c, i, j)


def exhaustive_check(stage: int, max_len: int, letters: str = "xXyYtT") -> dict:
    """Compare oracle and closed form on every word of length <= ``max_len``.

    Words are explored as paths from the empty word; each (state, letter)
    step is rewritten once by the oracle and compared with one closed-form
    product.  Since both sides are functions of the prefix's normal form this
    covers every word; ``words`` counts them.
    """
    from . import _kernel
    from .tower import _letter_table

    table = _letter_table(stage)
    start = (0, 0, 0, 0)
    frontier = {start: 1}
    packed = {start: _kernel.IDENTITY}
    step_cache: dict = {}
    words = 1
    mismatches = []
    for _ in range(max_len):
        nxt: dict = {}
        for state, mult in frontier.items():
            for ch in letters:
                key = (state, ch)
                res = step_cache.get(key)
                if res is None:
                    res = _state_from_string(rewrite(_state_string(state) + ch), stage)
                    step_cache[key] = res
                    closed = _kernel.tower_mul(packed[state], table[ch])
                    if res not in packed:
                        packed[res] = closed
                    if packed[res] != closed:
                        mismatches.append((_state_string(state) + ch, res))
                nxt[res] = nxt.get(res, 0) + mult
        words += sum(nxt.values())
        frontier = nxt
    return {
        "stage": stage,
        "max_len": max_len,
        "words": words,
        "states": len(packed),
        "steps_checked": len(step_cache),
        "mismatches": mismatches,
        "ok": not mismatches and all(
            packed[s] == state_to_element(s, stage).packed for s in packed),
    }


def random_word_check(stage: int, n_words: int, max_len: int, rng) -> list[str]:
    """Rewrite random words from scratch and return those disagreeing with ``normalize``."""
    bad = []
    for _ in range(n_words):
        w = "".join(rng.choice("xXyYtT") for _ in range(rng.randint(0, max_len)))
        if state_to_element(oracle_normal_form(w, stage), stage) != normalize(w, stage):
            bad.append(w)
    return bad
