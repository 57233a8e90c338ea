"""Trace-word observables and their exact matrix gradients.

An observable is a finite sum of terms ``coeff * Re tr(W)`` or
``coeff * Im tr(W)`` where ``W`` is a word whose letters are either symbols
(``"G"``, ``"Ginv"``, ``"J"`` on the phase space, ``"X"``, ``"Y"`` on the
double) or fixed constant matrices. Symbols are resolved through an
environment mapping at evaluation time.

Trace cyclicity makes every such observable invariant under simultaneous
conjugation of all environment matrices, which is exactly the class of
functions the rank certificates need. Every gradient returned here is the
unique su(n) element representing the corresponding directional derivative
with respect to the inner product ``<X, Y> = -Re tr(XY)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .groups import ShapeError, project_algebra

PHASE_LETTERS = ("G", "Ginv", "J")
DOUBLE_LETTERS = ("X", "Y")
_KNOWN_SYMBOLS = set(PHASE_LETTERS) | set(DOUBLE_LETTERS)


@dataclass(frozen=True)
class TraceWord:
    """One term ``coeff * part tr(letters...)``."""

    letters: tuple
    part: str = "re"
    coeff: float = 1.0

    def __post_init__(self):
        if len(self.letters) == 0:
            raise ValueError("a trace word needs at least one letter")
        if self.part not in ("re", "im"):
            raise ValueError("part must be 're' or 'im'")
        if not np.isfinite(self.coeff):
            raise ValueError("coefficient must be finite")
        for letter in self.letters:
            if isinstance(letter, str) and letter not in _KNOWN_SYMBOLS:
                raise ValueError(f"unknown letter {letter!r}")


@dataclass(frozen=True)
class Observable:
    """Sum of trace words, evaluated against a letter environment."""

    words: tuple

    def __post_init__(self):
        if not all(isinstance(w, TraceWord) for w in self.words):
            raise TypeError("Observable takes TraceWord terms")


def observable(*words) -> Observable:
    return Observable(tuple(words))


def word(letters, part="re", coeff=1.0) -> TraceWord:
    return TraceWord(tuple(letters), part, float(coeff))


def _resolve(letter, env):
    if isinstance(letter, str):
        try:
            return env[letter]
        except KeyError:
            raise KeyError(f"environment does not bind letter {letter!r}") from None
    return letter


def _word_matrices(w: TraceWord, env):
    mats = [np.asarray(_resolve(letter, env)) for letter in w.letters]
    n = mats[0].shape[0]
    for m in mats:
        if m.shape != (n, n):
            raise ShapeError("letters evaluate to matrices of different sizes")
    return mats


def _chain(mats, start, count, n):
    """Product of ``count`` consecutive matrices starting at ``start``, cyclically."""
    out = np.eye(n, dtype=complex)
    m = len(mats)
    for k in range(count):
        out = out @ mats[(start + k) % m]
    return out


def evaluate(obs: Observable, env) -> float:
    """Value of the observable; always a finite real number."""
    total = 0.0
    for w in obs.words:
        mats = _word_matrices(w, env)
        t = np.trace(_chain(mats, 0, len(mats), mats[0].shape[0]))
        total += w.coeff * (t.real if w.part == "re" else t.imag)
    return float(total)


def _accumulate(grad, w: TraceWord, S):
    """Fold ``d/dt = coeff * part tr(X S)`` into an su(n) gradient."""
    if w.part == "re":
        return grad - w.coeff * project_algebra(S)
    return grad + w.coeff * project_algebra(1j * S)


def letter_gradient(obs: Observable, env, letter: str):
    """Gradient with respect to an additive shift of one symbol.

    Returns the unique ``D`` in su(n) with
    ``<A, D> = d/dt value(letter -> letter + tA)`` for all ``A`` in su(n).
    Used for the ``J`` slot on the phase space and for either slot of the
    double.
    """
    n = np.asarray(_resolve(obs.words[0].letters[0], env)).shape[0]
    grad = np.zeros((n, n), dtype=complex)
    for w in obs.words:
        mats = _word_matrices(w, env)
        m = len(mats)
        S = np.zeros((n, n), dtype=complex)
        hit = False
        for i, lt in enumerate(w.letters):
            if isinstance(lt, str) and lt == letter:
                S = S + _chain(mats, i + 1, m - 1, n)
                hit = True
        if hit:
            grad = _accumulate(grad, w, S)
    return grad


def left_group_gradient(obs: Observable, env):
    """Gradient of ``g -> e^{tA} g`` variations.

    Occurrences of ``G`` contribute the cyclic chain starting at the
    occurrence, occurrences of ``Ginv`` contribute minus the chain starting
    one step later (the inverse letter ends the rotated word).
    """
    n = np.asarray(_resolve(obs.words[0].letters[0], env)).shape[0]
    grad = np.zeros((n, n), dtype=complex)
    for w in obs.words:
        mats = _word_matrices(w, env)
        m = len(mats)
        S = np.zeros((n, n), dtype=complex)
        hit = False
        for i, lt in enumerate(w.letters):
            if not isinstance(lt, str):
                continue
            if lt == "G":
                S = S + _chain(mats, i, m, n)
                hit = True
            elif lt == "Ginv":
                S = S - _chain(mats, i + 1, m, n)
                hit = True
        if hit:
            grad = _accumulate(grad, w, S)
    return grad


def right_group_gradient(obs: Observable, env):
    """Gradient of ``g -> g e^{tA}`` variations; unused by the bracket."""
    n = np.asarray(_resolve(obs.words[0].letters[0], env)).shape[0]
    grad = np.zeros((n, n), dtype=complex)
    for w in obs.words:
        mats = _word_matrices(w, env)
        m = len(mats)
        S = np.zeros((n, n), dtype=complex)
        hit = False
        for i, lt in enumerate(w.letters):
            if not isinstance(lt, str):
                continue
            if lt == "G":
                S = S + _chain(mats, i + 1, m, n)
                hit = True
            elif lt == "Ginv":
                S = S - _chain(mats, i, m, n)
                hit = True
        if hit:
            grad = _accumulate(grad, w, S)
    return grad


def substitute(obs: Observable, mapping) -> Observable:
    """Replace symbols by letter sequences, e.g. ``X -> (Ginv, J, G)``.

    Constant-matrix letters pass through unchanged.
    """
    new_words = []
    for w in obs.words:
        letters = []
        for lt in w.letters:
            if isinstance(lt, str) and lt in mapping:
                letters.extend(mapping[lt])
            else:
                letters.append(lt)
        new_words.append(TraceWord(tuple(letters), w.part, w.coeff))
    return Observable(tuple(new_words))


def scale(obs: Observable, factor: float) -> Observable:
    return Observable(tuple(TraceWord(w.letters, w.part, w.coeff * factor) for w in obs.words))


def add(*terms: Observable) -> Observable:
    out = []
    for t in terms:
        out.extend(t.words)
    return Observable(tuple(out))


def format_observable(obs: Observable) -> str:
    """Serialize to the text grammar ``coeff * Re|Im tr(W)`` joined by ``+``."""
    parts = []
    for w in obs.words:
        for lt in w.letters:
            if not isinstance(lt, str):
                raise ValueError("constant-matrix letters are not serializable")
        body = " ".join(w.letters)
        parts.append(f"{w.coeff!r} * {'Re' if w.part == 're' else 'Im'} tr({body})")
    return " + ".join(parts)


def parse_observable(text: str) -> Observable:
    """Parse the grammar produced by :func:`format_observable`.

    Terms are joined by ``+`` and each term reads
    ``coeff * Re|Im tr(letter letter ...)`` with letters drawn from
    ``G Ginv J X Y``.
    """
    words = []
    for chunk in text.split("+"):
        chunk = chunk.strip()
        if not chunk:
            raise ValueError("empty term in observable expression")
        try:
            coeff_text, rest = chunk.split("*", 1)
            coeff = float(coeff_text.strip())
            rest = rest.strip()
            part_text, rest = rest.split(" ", 1)
            rest = rest.strip()
            if not (rest.startswith("tr(") and rest.endswith(")")):
                raise ValueError
            letters = tuple(rest[3:-1].split())
        except ValueError:
            raise ValueError(f"malformed observable term: {chunk!r}") from None
        if part_text not in ("Re", "Im"):
            raise ValueError(f"malformed observable term: {chunk!r}")
        if not letters:
            raise ValueError(f"malformed observable term: {chunk!r}")
        words.append(TraceWord(letters, "re" if part_text == "Re" else "im", coeff))
    return Observable(tuple(words))


def random_word(rng, alphabet, max_len=4, parts=("re", "im")) -> TraceWord:
    """Uniform random word over ``alphabet`` with length in ``1..max_len``."""
    length = int(rng.integers(1, max_len + 1))
    letters = tuple(alphabet[int(k)] for k in rng.integers(0, len(alphabet), size=length))
    part = parts[int(rng.integers(0, len(parts)))]
    return TraceWord(letters, part, 1.0)


def random_observable(rng, alphabet, max_len=4, max_terms=2) -> Observable:
    terms = int(rng.integers(1, max_terms + 1))
    return Observable(tuple(random_word(rng, alphabet, max_len) for _ in range(terms)))
