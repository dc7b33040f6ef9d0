import pytest

from glassbox.platform import Registry, build_demo_data


@pytest.fixture(scope="session")
def data_root(tmp_path_factory):
    root = tmp_path_factory.mktemp("demo-data")
    build_demo_data(root, seed=0)
    return root


@pytest.fixture(scope="session")
def registry(data_root):
    return Registry(data_root)
