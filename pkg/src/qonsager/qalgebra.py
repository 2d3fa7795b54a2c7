"""Free noncommutative algebra over the Chevalley alphabet.

Letters of the quantum alphabet are e0, e1, f0, f1 and the Cartan
exponentials t0 = q^{h0}, t1 = q^{h1} with inverses t0', t1'.  The symbol
h_i itself is never a letter in quantum mode; the central q^c is the word
t0*t1.  A separate classical alphabet (q -> 1) carries h as a letter for
the classical-limit checks.

No rewriting is performed at this level: equality of FreeElements is
term-map equality, strictly finer than equality in the quantum affine
algebra.  Identities that need the algebra relations are checked
downstream in representations.
"""

from __future__ import annotations

from typing import Iterable

from .coeff import ONE, Scalar, ZERO, qpow, scalar_str
from .errors import AlphabetMismatch

QUANTUM_LETTERS = ("e0", "e1", "f0", "f1", "t0", "t0'", "t1", "t1'")
CLASSICAL_LETTERS = ("e0c", "e1c", "f0c", "f1c", "h0c", "h1c")

#: alphabet name -> allowed letters; coideal presentations register theirs.
ALPHABETS = {
    "quantum": frozenset(QUANTUM_LETTERS),
    "classical": frozenset(CLASSICAL_LETTERS),
}


def register_alphabet(name: str, letters: Iterable[str]) -> None:
    ALPHABETS[name] = frozenset(letters)


def _check_word(alphabet: str, word: tuple) -> tuple:
    letters = ALPHABETS[alphabet]
    word = tuple(word)
    for letter in word:
        if letter not in letters:
            raise AlphabetMismatch(f"letter {letter!r} not in alphabet {alphabet!r}")
    return word


class FreeElement:
    """Finite Scalar-weighted sum of words over one alphabet."""

    __slots__ = ("alphabet", "terms")

    def __init__(self, alphabet: str, terms=None):
        self.alphabet = alphabet
        clean = {}
        if terms:
            for word, coeff in terms.items():
                if not coeff.is_zero:
                    clean[_check_word(alphabet, word)] = coeff
        self.terms = clean

    # -- constructors -------------------------------------------------

    @staticmethod
    def unit(alphabet: str) -> "FreeElement":
        return FreeElement(alphabet, {(): ONE})

    @staticmethod
    def zero(alphabet: str) -> "FreeElement":
        return FreeElement(alphabet)

    @staticmethod
    def word(alphabet: str, letters, coeff: Scalar = ONE) -> "FreeElement":
        return FreeElement(alphabet, {tuple(letters): coeff})

    # -- ring structure -----------------------------------------------

    def _require_same(self, other: "FreeElement") -> None:
        if self.alphabet != other.alphabet:
            raise AlphabetMismatch(
                f"cannot mix alphabets {self.alphabet!r} and {other.alphabet!r}"
            )

    def __add__(self, other: "FreeElement") -> "FreeElement":
        self._require_same(other)
        out = dict(self.terms)
        for word, coeff in other.terms.items():
            acc = out.get(word, ZERO) + coeff
            if acc.is_zero:
                out.pop(word, None)
            else:
                out[word] = acc
        return FreeElement(self.alphabet, out)

    def __neg__(self) -> "FreeElement":
        return FreeElement(self.alphabet, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "FreeElement") -> "FreeElement":
        return self + (-other)

    def __mul__(self, other: "FreeElement") -> "FreeElement":
        self._require_same(other)
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                word = w1 + w2
                acc = out.get(word, ZERO) + c1 * c2
                if acc.is_zero:
                    out.pop(word, None)
                else:
                    out[word] = acc
        return FreeElement(self.alphabet, out)

    def scale(self, coeff: Scalar) -> "FreeElement":
        if coeff.is_zero:
            return FreeElement(self.alphabet)
        return FreeElement(self.alphabet, {w: c * coeff for w, c in self.terms.items()})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, FreeElement):
            return NotImplemented
        return self.alphabet == other.alphabet and (self - other).is_zero

    def __hash__(self):
        return hash((self.alphabet, frozenset(self.terms)))

    # -- coefficient-level maps ----------------------------------------

    def map_coeffs(self, fn) -> "FreeElement":
        return FreeElement(self.alphabet, {w: fn(c) for w, c in self.terms.items()})

    def substitute(self, assignment) -> "FreeElement":
        return self.map_coeffs(lambda c: c.substitute(assignment))

    def coeff_of(self, var: str, n: int) -> "FreeElement":
        """Word-wise coefficient of var**n (no divisibility requirement)."""
        return self.map_coeffs(lambda c: c.extract_order(var, n))

    def limit_divide(self, var: str, n: int) -> "FreeElement":
        """lim_{var->0} self / var**n at the free level.

        Honest only when the lower orders vanish word by word; raises
        ``NotDivisible`` otherwise.  Higher orders are dropped (they vanish
        in the limit).
        """
        from .errors import NotDivisible

        for j in range(n):
            low = self.coeff_of(var, j)
            if not low.is_zero:
                raise NotDivisible(
                    f"order-{j} part in {var} is nonzero: {render_element(low)}"
                )
        return self.coeff_of(var, n)

    def __repr__(self):
        return f"FreeElement({self.alphabet}, {render_element(self)})"


def render_element(x: FreeElement) -> str:
    """Canonical text form, letters separated by spaces."""
    if x.is_zero:
        return "0"
    parts = []
    for word in sorted(x.terms, key=lambda w: (len(w), w)):
        c = x.terms[word]
        body = " ".join(word) if word else "1"
        parts.append(f"[{scalar_str(c)}] {body}")
    return " + ".join(parts)


class TensorElement:
    """Scalar-weighted sum of word tuples of a fixed arity."""

    __slots__ = ("alphabet", "arity", "terms")

    def __init__(self, alphabet: str, arity: int, terms=None):
        self.alphabet = alphabet
        self.arity = arity
        clean = {}
        if terms:
            for key, coeff in terms.items():
                if len(key) != arity:
                    raise ValueError(f"tuple {key} does not have arity {arity}")
                if not coeff.is_zero:
                    clean[tuple(_check_word(alphabet, w) for w in key)] = coeff
        self.terms = clean

    @staticmethod
    def unit(alphabet: str, arity: int) -> "TensorElement":
        return TensorElement(alphabet, arity, {((),) * arity: ONE})

    def _require_same(self, other: "TensorElement") -> None:
        if self.alphabet != other.alphabet or self.arity != other.arity:
            raise AlphabetMismatch("tensor operands disagree in alphabet or arity")

    def __add__(self, other: "TensorElement") -> "TensorElement":
        self._require_same(other)
        out = dict(self.terms)
        for key, coeff in other.terms.items():
            acc = out.get(key, ZERO) + coeff
            if acc.is_zero:
                out.pop(key, None)
            else:
                out[key] = acc
        return TensorElement(self.alphabet, self.arity, out)

    def __neg__(self):
        return TensorElement(self.alphabet, self.arity,
                             {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "TensorElement") -> "TensorElement":
        """Slotwise product."""
        self._require_same(other)
        out: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(k1, k2))
                acc = out.get(key, ZERO) + c1 * c2
                if acc.is_zero:
                    out.pop(key, None)
                else:
                    out[key] = acc
        return TensorElement(self.alphabet, self.arity, out)

    def scale(self, coeff: Scalar) -> "TensorElement":
        if coeff.is_zero:
            return TensorElement(self.alphabet, self.arity)
        return TensorElement(self.alphabet, self.arity,
                             {k: c * coeff for k, c in self.terms.items()})

    def reverse_slots(self) -> "TensorElement":
        return TensorElement(self.alphabet, self.arity,
                             {tuple(reversed(k)): c for k, c in self.terms.items()})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return (self.alphabet == other.alphabet and self.arity == other.arity
                and (self - other).is_zero)

    def __repr__(self):
        parts = []
        for key in sorted(self.terms):
            c = self.terms[key]
            slots = " (x) ".join(" ".join(w) if w else "1" for w in key)
            parts.append(f"[{scalar_str(c)}] {slots}")
        return "TensorElement(" + (" + ".join(parts) or "0") + ")"


# -- convenience generators -------------------------------------------

def gen(letter: str, alphabet: str = "quantum") -> FreeElement:
    return FreeElement.word(alphabet, (letter,))


def unit(alphabet: str = "quantum") -> FreeElement:
    return FreeElement.unit(alphabet)


def cartan(a0: int, a1: int) -> FreeElement:
    """q^{a0*h0 + a1*h1} as the canonical word (t0-run then t1-run)."""
    word = []
    word += ["t0"] * a0 if a0 >= 0 else ["t0'"] * (-a0)
    word += ["t1"] * a1 if a1 >= 0 else ["t1'"] * (-a1)
    return FreeElement.word("quantum", word)


def qc() -> FreeElement:
    """The central element q^c = q^{h0+h1}."""
    return cartan(1, 1)


def qcomm(a: FreeElement, b: FreeElement, n: int = 1) -> FreeElement:
    """q-commutator q^n a b - q^-n b a; n = 0 is the plain commutator."""
    return (a * b).scale(qpow(n)) - (b * a).scale(qpow(-n))


# -- Hopf structure maps ---------------------------------------------
#
# Generator tables:
#   D(e_i) = e_i (x) 1   + t_i (x) e_i
#   D(f_i) = f_i (x) t_i'+ 1   (x) f_i
#   D(t_i^(+-1)) = t_i^(+-1) (x) t_i^(+-1)
#   S(e_i) = -t_i' e_i,  S(f_i) = -f_i t_i,  S(t_i^(+-1)) = t_i^(-+1)
#   E(e_i) = E(f_i) = 0,  E(t_i^(+-1)) = E(1) = 1

_DELTA_LETTER = {
    "e0": ((ONE, ("e0",), ()), (ONE, ("t0",), ("e0",))),
    "e1": ((ONE, ("e1",), ()), (ONE, ("t1",), ("e1",))),
    "f0": ((ONE, ("f0",), ("t0'",)), (ONE, (), ("f0",))),
    "f1": ((ONE, ("f1",), ("t1'",)), (ONE, (), ("f1",))),
    "t0": ((ONE, ("t0",), ("t0",)),),
    "t1": ((ONE, ("t1",), ("t1",)),),
    "t0'": ((ONE, ("t0'",), ("t0'",)),),
    "t1'": ((ONE, ("t1'",), ("t1'",)),),
}

_ANTIPODE_LETTER = {
    "e0": (Scalar.const(-1), ("t0'", "e0")),
    "e1": (Scalar.const(-1), ("t1'", "e1")),
    "f0": (Scalar.const(-1), ("f0", "t0")),
    "f1": (Scalar.const(-1), ("f1", "t1")),
    "t0": (ONE, ("t0'",)),
    "t1": (ONE, ("t1'",)),
    "t0'": (ONE, ("t0",)),
    "t1'": (ONE, ("t1",)),
}


def _require_quantum(x: FreeElement) -> None:
    if x.alphabet != "quantum":
        raise AlphabetMismatch(f"operation needs the quantum alphabet, got {x.alphabet!r}")


def _delta_word(word: tuple) -> list:
    """Two-slot coproduct of one word: list of (coeff, left, right)."""
    parts = [(ONE, (), ())]
    for letter in word:
        parts = [
            (c * dc, left + dl, right + dr)
            for (c, left, right) in parts
            for (dc, dl, dr) in _DELTA_LETTER[letter]
        ]
    return parts


def coproduct(x: FreeElement, slots: int = 2, opposite: bool = False) -> TensorElement:
    """Iterated coproduct, expanding the leftmost slot.

    The leftmost slot corresponds to the highest chain site.  With
    ``opposite`` the result is post-composed with slot reversal.
    """
    _require_quantum(x)
    if slots < 2:
        raise ValueError("coproduct needs at least 2 slots")
    out: dict = {}
    for word, coeff in x.terms.items():
        for c, left, right in _delta_word(word):
            key = (left, right)
            acc = out.get(key, ZERO) + coeff * c
            if acc.is_zero:
                out.pop(key, None)
            else:
                out[key] = acc
    result = TensorElement("quantum", 2, out)
    for _ in range(slots - 2):
        expanded: dict = {}
        for key, coeff in result.terms.items():
            for c, left, right in _delta_word(key[0]):
                new_key = (left, right) + key[1:]
                acc = expanded.get(new_key, ZERO) + coeff * c
                if acc.is_zero:
                    expanded.pop(new_key, None)
                else:
                    expanded[new_key] = acc
        result = TensorElement("quantum", result.arity + 1, expanded)
    if opposite:
        result = result.reverse_slots()
    return result


def counit(x: FreeElement) -> Scalar:
    _require_quantum(x)
    total = ZERO
    for word, coeff in x.terms.items():
        if all(letter.startswith("t") for letter in word):
            total = total + coeff
    return total


def counit_word(word: tuple) -> Scalar:
    return ONE if all(letter.startswith("t") for letter in word) else ZERO


def antipode(x: FreeElement) -> FreeElement:
    """Anti-homomorphic extension of the letter table."""
    _require_quantum(x)
    out = FreeElement.zero("quantum")
    for word, coeff in x.terms.items():
        sign = coeff
        image = ()
        for letter in reversed(word):
            c, w = _ANTIPODE_LETTER[letter]
            sign = sign * c
            image = image + w
        out = out + FreeElement.word("quantum", image, sign)
    return out
