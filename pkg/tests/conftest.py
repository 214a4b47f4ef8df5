import random
from pathlib import Path

import pytest

from sklogic import Solver, Var, compile_query, load_files

ROOT = Path(__file__).resolve().parent.parent
PROGRAMS = ROOT / "programs"
QUERIES = PROGRAMS / "queries"
GOLDEN = Path(__file__).resolve().parent / "golden"


def load(*names):
    return load_files([PROGRAMS / n for n in names])


def ask(program, query_text, **opts):
    """Run one query, returning the printed answer list."""
    from sklogic.cli import format_answers

    query = compile_query(query_text, program)
    solver = Solver(program, **opts)
    return format_answers(solver.ask(query.goals, qvar=Var(0), n=query.n))


def query_file(name):
    return (QUERIES / name).read_text()


@pytest.fixture(scope="session")
def board3x3():
    return load("board3x3.skl")


@pytest.fixture(scope="session")
def board3x3_row():
    return load("board3x3.skl", "board3x3_row.skl")


@pytest.fixture(scope="session")
def board3x3_rowcol():
    return load("board3x3.skl", "board3x3_row.skl", "board3x3_col.skl")


@pytest.fixture(scope="session")
def travel():
    return load("travel.skl")


@pytest.fixture(scope="session")
def nqueens():
    return load("nqueens4.skl")


@pytest.fixture(scope="session")
def coloring():
    return load("coloring.skl")


@pytest.fixture(scope="session")
def hamiltonian():
    return load("hamiltonian.skl")


# ---------------------------------------------------------------------------
# Random ground normal programs, shared by the oracle/engine equivalence
# suites.  Propositional (0-ary relations), with optional atom-set
# constraints over distinct atoms.

def random_ground_program(rng: random.Random, max_atoms=8, max_rules=12, max_constraints=3):
    natoms = rng.randint(2, max_atoms)
    atoms = [f"a{i}" for i in range(natoms)]
    bodies = {a: [] for a in atoms}
    for _ in range(rng.randint(1, max_rules)):
        head = rng.choice(atoms)
        lits = [(rng.choice(atoms), rng.random() < 0.4) for _ in range(rng.randint(0, 3))]
        bodies[head].append(lits)
    constraints = []
    for _ in range(rng.randint(0, max_constraints)):
        k = rng.randint(1, min(3, natoms))
        constraints.append([(b, rng.random() < 0.4) for b in rng.sample(atoms, k)])
    return atoms, bodies, constraints


def render_rules(bodies):
    lines = []
    for a, clauses in bodies.items():
        if clauses:
            branches = [
                "[" + (" ".join(f"(noto ({b}))" if neg else f"({b})" for b, neg in lits) or "(== 1 1)") + "]"
                for lits in clauses
            ]
            lines.append(f"(defineo ({a}) (conde {' '.join(branches)}))")
        else:
            lines.append(f"(defineo ({a}) (== 1 2))")
    return "\n".join(lines)


def render_constrainto(constraints):
    lines = []
    for lits in constraints:
        ems = " ".join(f"(noto ({b}))" if neg else f"({b})" for b, neg in lits)
        lines.append(f"(constrainto [{ems}] [])")
    return "\n".join(lines)


def render_encoded(constraints):
    """The same constraints as fail/not-fail rules."""
    lines = []
    for i, lits in enumerate(constraints):
        body = " ".join(f"(noto ({b}))" if neg else f"({b})" for b, neg in lits)
        lines.append(f"(defineo (fail{i}) {body} (noto (fail{i})))")
    return "\n".join(lines)
