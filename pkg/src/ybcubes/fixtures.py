"""Hard-coded presentations of the two rank-3 examples.

``gamma1`` acts simply transitively on T6 x T6 x T6 (q = 5, M the
non-multiples of 4 in Z/24).  ``gamma2`` acts on T4 x T6 x T8 and comes from
Hamiltonian quaternions for the primes 3, 5, 7.
"""

from __future__ import annotations

from .presentation import Label, Presentation, PresentationError, parse_word

__all__ = ["FIXTURES", "fixture", "GAMMA1_RELATORS", "GAMMA2_RELATORS"]

GAMMA1_RELATORS = [
    # a/b
    "a1b2a17b22", "a1b6a9b10", "a1b10a9b6", "a1b14a21b14", "a1b18a5b18",
    "a1b22a17b2", "a5b2a21b6", "a5b6a21b2", "a5b22a9b22",
    # a/c
    "a1c3a17c3", "a1c7a13c19", "a1c11a9c11", "a1c15a1c23", "a5c3a5c19",
    "a5c7a21c7", "a5c11a17c23", "a9c3a21c15", "a9c7a9c23",
    # b/c
    "b2c3b18c23", "b2c7b10c11", "b2c11b10c7", "b2c15b22c15", "b2c19b6c19",
    "b2c23b18c3", "b6c3b22c7", "b6c7b22c3", "b6c23b10c23",
]

GAMMA2_RELATORS = [
    "a1b1a4b2", "a1b2a4b4", "a1b3a2b1", "a1b4a2b3", "a1b5a1b6", "a2b2a2b6",
    "a1c1a2c8", "a1c2a4c4", "a1c3a2c2", "a1c4a3c3",
    "a1c5a1c6", "a1c7a4c1", "a2c1a4c6", "a2c4a2c7",
    "b1c1b5c4", "b1c2b1c5", "b1c3b6c1", "b1c4b3c6", "b1c6b2c3", "b1c7b1c8",
    "b2c1b3c2", "b2c2b5c5", "b2c4b5c3", "b2c7b6c4", "b3c1b6c6", "b3c4b6c3",
]


def _gamma1() -> Presentation:
    labels = []
    for color, (letter, r) in enumerate(zip("abc", (1, 2, 3))):
        for i in range(r, 24, 4):
            labels.append((letter + str(i), color, letter + str((i + 12) % 24)))
    return _assemble("gamma1", labels, GAMMA1_RELATORS)


def _gamma2() -> Presentation:
    labels = []
    for color, (letter, half) in enumerate(zip("abc", (2, 3, 4))):
        for i in range(1, 2 * half + 1):
            partner = (i - 1 + half) % (2 * half) + 1
            labels.append((letter + str(i), color, letter + str(partner)))
    return _assemble("gamma2", labels, GAMMA2_RELATORS)


def _assemble(name, raw_labels, words) -> Presentation:
    ids = {nm: k for k, (nm, _, _) in enumerate(raw_labels)}
    labels = [Label(k, nm, color, ids[partner]) for k, (nm, color, partner) in enumerate(raw_labels)]
    squares = [tuple(parse_word(w, ids)) for w in words]
    return Presentation.from_squares(labels, squares, name=name)


FIXTURES = {"gamma1": _gamma1, "gamma2": _gamma2}


def fixture(name: str) -> Presentation:
    try:
        return FIXTURES[name]()
    except KeyError:
        raise PresentationError(f"unknown fixture {name!r}; choose from {sorted(FIXTURES)}") from None
