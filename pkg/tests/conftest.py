import numpy as np
import pytest

from graphmoments import generate

ER_SIZES = (8, 12, 16, 20, 25, 30)
ER_PROBS = (0.1, 0.3, 0.5)


def seeded_er(index: int):
    """Deterministic Erdős–Rényi instance index -> graph (n <= 30)."""
    return generate("erdos_renyi", ER_SIZES[index % len(ER_SIZES)],
                    p=ER_PROBS[index % len(ER_PROBS)], seed=5000 + index)


def family_corpus(max_n: int = 200):
    """Complete graphs, stars, paths, and rings at a ladder of sizes."""
    graphs = []
    for n in (3, 4, 6, 10, 25, 60, 120, max_n):
        for kind in ("complete", "star", "path", "ring"):
            graphs.append((f"{kind}:{n}", generate(kind, n)))
    return graphs


@pytest.fixture(scope="session")
def small_er_corpus():
    """Forty seeded random graphs; enough for module-level property checks."""
    return [seeded_er(i) for i in range(40)]


@pytest.fixture(scope="session")
def named_graphs():
    return {
        "k3": generate("complete", 3),
        "k4": generate("complete", 4),
        "k6": generate("complete", 6),
        "r5": generate("ring", 5),
        "r6": generate("ring", 6),
        "r8": generate("ring", 8),
        "p5": generate("path", 5),
        "s5": generate("star", 5),
    }


def relative_gap(a: float, b: float, scale: float = 1.0) -> float:
    return abs(a - b) / max(1.0, abs(a), abs(b), scale)


def spectrum_scale(eigs: np.ndarray, k: int) -> float:
    """Natural size of the k-th moment: mean absolute eigenvalue power."""
    return float(np.sum(np.abs(eigs) ** k)) / len(eigs)
