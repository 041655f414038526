import pytest

from aspback import GenConfig, child_seed, parse_program, random_program

EX1_TEXT = """
s :- w.
u :- s, q.
r :- w, s.
t :- not r.
q :- not s, u.
w :- not r, u.
"""


@pytest.fixture
def ex1():
    return parse_program(EX1_TEXT)


@pytest.fixture
def ex1_ids(ex1):
    return {ex1.atom_name(i): i for i in range(ex1.n_atoms)}


def names_of(p, atoms):
    return frozenset(p.atom_name(a) for a in atoms)


def rule_sig(p, r):
    """Name-level (head, pos, neg) triple, stable under atom-id permutation."""
    return (names_of(p, r.head), names_of(p, r.pos_body), names_of(p, r.neg_body))


def program_sigs(p):
    return [rule_sig(p, r) for r in p.rules]


def corpus(count, seed, n_atoms=8, density=None, body_len=2, neg_prob=0.5):
    """Deterministic list of random programs with varied shape."""
    out = []
    for i in range(count):
        n = 3 + i % n_atoms if isinstance(n_atoms, int) else n_atoms[i % len(n_atoms)]
        rho = density if density is not None else 1 + (i * 3) % 8
        cfg = GenConfig(n_atoms=n, density=rho, body_len=min(body_len, n - 1),
                        neg_prob=neg_prob, seed=child_seed(seed, i))
        out.append(random_program(cfg))
    return out
