import pytest
import congestlab as cl
from congestlab import graphs


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: large seeded sweeps")


@pytest.fixture
def triangle():
    return graphs.complete_graph(3)


@pytest.fixture
def petersen():
    return graphs.petersen_graph()


@pytest.fixture
def k4():
    return graphs.complete_graph(4)


@pytest.fixture
def k23():
    return graphs.complete_bipartite_graph(2, 3)


@pytest.fixture
def cfg():
    return cl.SimConfig()


@pytest.fixture(params=[(12, 0.3), (16, 0.2), (20, 0.1), (14, 0.3), (18, 0.2)])
def random_graph(request):
    n, p = request.param
    return graphs.random_graph(n, p, seed=n)


@pytest.fixture(scope="module")
def detection_sweep():
    """Seeded G(n, p) graphs with n in 8..40 and p in {0.1, 0.2, 0.3}."""
    return [
        graphs.random_graph(8 + 8 * (i // 3 % 5), (0.1, 0.2, 0.3)[i % 3], seed=i)
        for i in range(210)
    ]


@pytest.fixture
def graph_file(tmp_path):
    def write(g, name="graph"):
        path = tmp_path / f"{name}.txt"
        graphs.write_graph(g, str(path))
        return str(path)

    return write
