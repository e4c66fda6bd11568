import random

import pytest

from lcocycle.cli import resolve
from lcocycle.diagram import from_morse, random_morse

# filled by test_acceptance; printed at the end of the session
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, note = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {note}")


@pytest.fixture(scope="session")
def knots():
    names = ["trefoil+", "trefoil-", "fig8", "8_17", "conway", "kt", "product"]
    out = {n: resolve(n) for n in names}
    out["-8_17"] = resolve("inv:8_17")
    out["-conway"] = resolve("inv:conway")
    return out


def random_diagrams(seed, count, components=1, max_crossings=10, min_crossings=1):
    """Random closed Morse diagrams; ``components=None`` accepts any count."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(min_crossings, max_crossings)
        d = from_morse(random_morse(rng, n, max_width=6))
        if components is None or len(d.components) == components:
            out.append(d)
    return out


def perturb(word, rng, moves=3):
    """Random framing-preserving isotopy of the long closure of a braid word.

    Braid-level R II insertions, R III substitutions, far commutations and
    stabilizations (each stabilization compensated by a kink of the same
    framing change with opposite sign), plus kink pairs at the ends.
    Returns the diagram and the list of moves applied.
    """
    from lcocycle.braid import BraidWord, equal
    from lcocycle.diagram import add_curl, from_braid

    n = word.strands
    letters = list(word.letters)
    kinks = []
    done = []
    for _ in range(moves):
        kind = rng.choice(["r2", "r2", "r3", "far", "stab", "kinks"])
        if kind == "r2":
            i = rng.randint(1, n - 1)
            e = rng.choice((1, -1))
            p = rng.randint(0, len(letters))
            letters[p:p] = [(i, e), (i, -e)]
        elif kind in ("r3", "far"):
            spots = []
            for p in range(len(letters) - 2):
                (a, x), (b, y), (c, z) = letters[p:p + 3]
                if a == c and abs(a - b) == 1:
                    new = [(b, z), (a, y), (b, x)]
                    if equal(BraidWord(n, tuple(letters[p:p + 3])), BraidWord(n, tuple(new))):
                        spots.append((p, 3, new))
            if kind == "far" or not spots:
                spots = [(p, 2, [letters[p + 1], letters[p]]) for p in range(len(letters) - 1)
                         if abs(letters[p][0] - letters[p + 1][0]) > 1] or spots
            if not spots:
                continue
            p, k, new = rng.choice(spots)
            letters[p:p + k] = new
        elif kind == "stab":
            e = rng.choice((1, -1))
            letters.append((n, e))
            n += 1
            # the stabilization changes (writhe, whitney) by (e, -1)
            kinks.append((-e, "above"))
        else:
            kinks += [(1, "above"), (-1, "below")]
        done.append(kind)
    d = from_braid(BraidWord(n, tuple(letters)), "long")
    for k, (sign, loop) in enumerate(kinks):
        d = add_curl(d, sign, "right" if k % 2 else "left", loop)
    return d, done
