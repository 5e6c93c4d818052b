import pytest
from hypothesis import strategies as st

from poset_entropy.corpus import two_chain_poset
from poset_entropy.poset import poset_from_covers

EXAMPLE1_COVERS = [("a", "b"), ("b", "c"), ("d", "e"), ("e", "f"), ("a", "e"), ("b", "f"), ("d", "c")]

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def example1():
    """Ḡ is the path a-d-b-e-c-f."""
    return poset_from_covers("abcdef", EXAMPLE1_COVERS)


@st.composite
def width2_posets(draw, max_n=9):
    n = draw(st.integers(0, max_n))
    a = draw(st.integers((n + 1) // 2, n))
    b = n - a
    down = sorted(draw(st.lists(st.integers(0, b), min_size=a, max_size=a)))
    up = sorted(draw(st.lists(st.integers(0, b), min_size=a, max_size=a)))
    up = [max(d, u) for d, u in zip(down, up)]
    return two_chain_poset(a, b, tuple(down), tuple(up))


_CONNECTED = None


def connected_width2():
    """Width-2 posets with n <= 8 whose incomparability graph is connected."""
    global _CONNECTED
    if _CONNECTED is None:
        from poset_entropy.corpus import enumerate_width2
        from poset_entropy.poset import incomparability_graph

        _CONNECTED = [
            p for n in range(2, 9) for p in enumerate_width2(n)
            if len(incomparability_graph(p).components) == 1
        ]
    return st.sampled_from(_CONNECTED)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
