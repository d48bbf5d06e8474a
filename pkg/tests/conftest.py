import pytest
from dotenv import load_dotenv
from conwaygordon.core.family import family_closure, load_family
from conwaygordon.core.graph import Graph, complete_graph
from conwaygordon.core.spatial import PLEmbedding, random_embedding

# Load environment variables from .env file
load_dotenv()

@pytest.fixture(scope="session")
def k6():
    """Labelled K6."""
    return complete_graph(6)

@pytest.fixture(scope="session")
def k7():
    """Labelled K7."""
    return complete_graph(7)

@pytest.fixture(scope="session")
def k6_family():
    """ΔY family of K6."""
    return family_closure("K6")

@pytest.fixture(scope="session")
def k7_family():
    """ΔY family of K7."""
    return family_closure("K7")

@pytest.fixture(scope="session")
def q7():
    """Q7 member: K6 after one ΔY-exchange."""
    return load_family("K6").get("Q7")

@pytest.fixture(scope="session")
def h8():
    """H8 member: K7 after one ΔY-exchange."""
    return load_family("K7").get("H8")

@pytest.fixture(scope="session")
def output_dir(tmp_path_factory):
    """Create a temporary directory for test outputs."""
    output_dir = tmp_path_factory.mktemp("test_outputs")
    return output_dir

@pytest.fixture
def hopf_embedding():
    """Two linked squares; the straight-down projection is degenerate."""
    g = Graph.from_edges([(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4)], name="hopf")
    points = {
        0: (0, 0, 0), 1: (4, 0, 0), 2: (4, 4, 0), 3: (0, 4, 0),
        4: (2, 2, -2), 5: (6, 2, -2), 6: (6, 2, 2), 7: (2, 2, 2),
    }
    return PLEmbedding(g, points)

@pytest.fixture
def k6_embedding(k6):
    """Random embedding of K6 with a fixed seed."""
    return random_embedding(k6, 11)

@pytest.fixture
def k7_embedding(k7):
    """Random embedding of K7 with a fixed seed."""
    return random_embedding(k7, 5)
