"""Words in a free group, generator maps, and Nielsen (N0-N2) machinery.

Letters are encoded as nonzero signed integers: +i is the i-th generator
(1-based), -i its inverse.  The text form uses lowercase for generators and
uppercase for inverses, so "baB" reads as b a b^-1 and "" is the identity.
"""
from __future__ import annotations

import itertools
import string
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence


@dataclass(frozen=True)
class Alphabet:
    """Generators of a free group, named by distinct single lowercase letters."""

    names: tuple[str, ...]

    def __post_init__(self):
        if not 1 <= len(self.names) <= 26:
            raise ValueError("alphabet rank must be between 1 and 26")
        if len(set(self.names)) != len(self.names):
            raise ValueError("generator names must be distinct")
        for name in self.names:
            if len(name) != 1 or name not in string.ascii_lowercase:
                raise ValueError("generator name must be a single lowercase letter: %r" % (name,))

    @classmethod
    def of_rank(cls, rank: int) -> "Alphabet":
        if not 1 <= rank <= 26:
            raise ValueError("alphabet rank must be between 1 and 26")
        return cls(tuple(string.ascii_lowercase[:rank]))

    @property
    def rank(self) -> int:
        return len(self.names)

    def signed_letters(self) -> tuple[int, ...]:
        """All letters of X^+- in the fixed order a, b, ..., a^-1, b^-1, ..."""
        rank = self.rank
        return tuple(range(1, rank + 1)) + tuple(range(-1, -rank - 1, -1))

    def letter_str(self, letter: int) -> str:
        name = self.names[abs(letter) - 1]
        return name if letter > 0 else name.upper()

    def parse_letter(self, ch: str) -> int:
        low = ch.lower()
        if low not in self.names:
            raise ValueError("unknown generator letter: %r" % (ch,))
        index = self.names.index(low) + 1
        return index if ch.islower() else -index


F2 = Alphabet.of_rank(2)


def free_reduce(letters: Iterable[int]) -> tuple[int, ...]:
    """Cancel adjacent inverse pairs until none remain."""
    out: list[int] = []
    for letter in letters:
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


@dataclass(frozen=True)
class Word:
    """A freely reduced word; the constructor reduces its input eagerly."""

    alphabet: Alphabet
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        rank = self.alphabet.rank
        for letter in self.letters:
            if not isinstance(letter, int) or letter == 0 or abs(letter) > rank:
                raise ValueError("letter %r out of range for rank %d" % (letter, rank))
        object.__setattr__(self, "letters", free_reduce(self.letters))

    @classmethod
    def parse(cls, text: str, alphabet: Alphabet) -> "Word":
        return cls(alphabet, tuple(alphabet.parse_letter(ch) for ch in text))

    @classmethod
    def identity(cls, alphabet: Alphabet) -> "Word":
        return cls(alphabet, ())

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def is_identity(self) -> bool:
        return not self.letters

    def __mul__(self, other: "Word") -> "Word":
        if self.alphabet != other.alphabet:
            raise ValueError("cannot multiply words over different alphabets")
        return Word(self.alphabet, self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(self.alphabet, tuple(-l for l in reversed(self.letters)))

    def __invert__(self) -> "Word":
        return self.inverse()

    def cyclic_reduce(self) -> tuple["Word", "Word"]:
        """Return (core, conjugator) with self = conjugator * core * conjugator^-1."""
        letters = list(self.letters)
        conj: list[int] = []
        while len(letters) >= 2 and letters[0] == -letters[-1]:
            conj.append(letters[0])
            letters = letters[1:-1]
        return Word(self.alphabet, tuple(letters)), Word(self.alphabet, tuple(conj))

    def __str__(self) -> str:
        return "".join(self.alphabet.letter_str(l) for l in self.letters)

    def __repr__(self) -> str:
        return "Word(%r)" % (str(self) or "1")


@dataclass(frozen=True)
class GeneratorMap:
    """A homomorphism between free groups given by one image word per generator."""

    domain: Alphabet
    codomain: Alphabet
    images: tuple[Word, ...]

    def __post_init__(self):
        if len(self.images) != self.domain.rank:
            raise ValueError("need exactly one image per domain generator")
        for image in self.images:
            if image.alphabet != self.codomain:
                raise ValueError("image word %r is not over the codomain" % (image,))

    @classmethod
    def identity(cls, alphabet: Alphabet) -> "GeneratorMap":
        return cls(alphabet, alphabet, tuple(Word(alphabet, (i,)) for i in range(1, alphabet.rank + 1)))

    def letter_image(self, letter: int) -> Word:
        image = self.images[abs(letter) - 1]
        return image if letter > 0 else image.inverse()

    def __call__(self, word: Word) -> Word:
        if word.alphabet != self.domain:
            raise ValueError("word is not over the map's domain")
        letters: list[int] = []
        for letter in word.letters:
            letters.extend(self.letter_image(letter).letters)
        return Word(self.codomain, tuple(letters))

    def then(self, other: "GeneratorMap") -> "GeneratorMap":
        """The composite applying self first, then other."""
        if self.codomain != other.domain:
            raise ValueError("codomain/domain mismatch in composition")
        return GeneratorMap(self.domain, other.codomain, tuple(other(im) for im in self.images))

    def is_length_preserving(self) -> bool:
        """True iff the map is a signed permutation of the generators."""
        if self.domain != self.codomain:
            return False
        if any(len(im) != 1 for im in self.images):
            return False
        targets = sorted(abs(im.letters[0]) for im in self.images)
        return targets == list(range(1, self.domain.rank + 1))

    def has_nontrivial_fixed_point(self) -> bool:
        """For a length-preserving map: does some nontrivial word map to itself?

        Images of reduced words are letterwise images (already reduced), so a
        fixed word exists iff some generator is fixed.
        """
        if not self.is_length_preserving():
            raise ValueError("fixed-point test requires a length-preserving map")
        return any(im.letters == (i + 1,) for i, im in enumerate(self.images))

    def __str__(self) -> str:
        entries = []
        for i, image in enumerate(self.images):
            entries.append("%s=%s" % (self.domain.names[i], str(image)))
        return ";".join(entries)

    @classmethod
    def parse(cls, text: str, domain: Alphabet, codomain: Alphabet) -> "GeneratorMap":
        """Parse "a=aa;b=ABab" relative to explicit domain and codomain."""
        images: dict[str, Word] = {}
        for entry in text.split(";"):
            entry = entry.strip()
            if not entry:
                continue
            if "=" not in entry:
                raise ValueError("bad map entry (expected name=word): %r" % (entry,))
            name, _, body = entry.partition("=")
            name = name.strip()
            if name not in domain.names:
                raise ValueError("unknown domain generator: %r" % (name,))
            images[name] = Word.parse(body.strip(), codomain)
        missing = [n for n in domain.names if n not in images]
        if missing:
            raise ValueError("missing image for generator(s): %s" % ", ".join(missing))
        return cls(domain, codomain, tuple(images[n] for n in domain.names))


def compose(f: GeneratorMap, g: GeneratorMap) -> GeneratorMap:
    """Apply f first, then g."""
    return f.then(g)


def apply_map(f: GeneratorMap, word: Word) -> Word:
    return f(word)


def enumerate_length_preserving(alphabet: Alphabet) -> list[GeneratorMap]:
    """All signed permutations of the generators, in a fixed deterministic order.

    For rank 2 there are exactly 8; index 0 is the identity.
    """
    maps = []
    for perm in itertools.permutations(range(alphabet.rank)):
        for signs in itertools.product((1, -1), repeat=alphabet.rank):
            images = tuple(Word(alphabet, (signs[i] * (perm[i] + 1),)) for i in range(alphabet.rank))
            maps.append(GeneratorMap(alphabet, alphabet, images))
    return maps


@dataclass
class NReducedReport:
    """Outcome of the N0/N1/N2 check, with one witness per violated condition."""

    passed: bool
    violations: list[tuple[str, tuple[Word, ...]]]


def _symmetrize(words: Iterable[Word]) -> list[Word]:
    seen: list[Word] = []
    for u in words:
        for v in (u, u.inverse()):
            if v not in seen:
                seen.append(v)
    return seen


def check_n_reduced(words: Iterable[Word]) -> NReducedReport:
    """Check the Nielsen conditions over U and its inverses.

    N0: no element is trivial.
    N1: v1 v2 != 1 implies |v1 v2| >= max(|v1|, |v2|).
    N2: v1 v2 != 1 and v2 v3 != 1 imply |v1 v2 v3| > |v1| - |v2| + |v3|.
    """
    upm = _symmetrize(words)
    violations: list[tuple[str, tuple[Word, ...]]] = []

    for v1 in upm:
        if v1.is_identity:
            violations.append(("N0", (v1,)))
            break

    done = False
    for v1 in upm:
        for v2 in upm:
            p = v1 * v2
            if not p.is_identity and len(p) < max(len(v1), len(v2)):
                violations.append(("N1", (v1, v2)))
                done = True
                break
        if done:
            break

    done = False
    for v1 in upm:
        for v2 in upm:
            if (v1 * v2).is_identity:
                continue
            for v3 in upm:
                if (v2 * v3).is_identity:
                    continue
                if len(v1 * v2 * v3) <= len(v1) - len(v2) + len(v3):
                    violations.append(("N2", (v1, v2, v3)))
                    done = True
                    break
            if done:
                break
        if done:
            break

    return NReducedReport(passed=not violations, violations=violations)


@dataclass
class MiddleDecomposition:
    """For each u in U^+-, the split u = a(u) m(u) a(u^-1)^-1 with m(u) nonempty.

    a(u) is the longest prefix of u cancelled in any product v*u over v in U^+-
    with v*u != 1; m(u) is what no product can touch.
    """

    parts: dict[Word, tuple[Word, Word]]

    def prefix(self, u: Word) -> Word:
        return self.parts[u][0]

    def middle(self, u: Word) -> Word:
        return self.parts[u][1]


def middle_decomposition(words: Iterable[Word]) -> MiddleDecomposition:
    upm = _symmetrize(words)
    report = check_n_reduced(upm)
    if not report.passed:
        raise ValueError("middle decomposition requires an N-reduced set; violations: %r"
                         % (report.violations,))

    a_len: dict[Word, int] = {}
    for u in upm:
        best = 0
        for v in upm:
            p = v * u
            if p.is_identity:
                continue
            best = max(best, (len(v) + len(u) - len(p)) // 2)
        a_len[u] = best

    parts: dict[Word, tuple[Word, Word]] = {}
    for u in upm:
        p = a_len[u]
        s = a_len[u.inverse()]
        if len(u) - p - s < 1:
            raise ValueError("empty middle for %r; set is not N-reduced" % (u,))
        alphabet = u.alphabet
        prefix = Word(alphabet, u.letters[:p])
        middle = Word(alphabet, u.letters[p:len(u) - s])
        parts[u] = (prefix, middle)
    return MiddleDecomposition(parts)


def parse_words(text: str, alphabet: Alphabet) -> list[Word]:
    """Parse a comma-separated list of words; blank entries are dropped."""
    out = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if chunk:
            out.append(Word.parse(chunk, alphabet))
    return out
