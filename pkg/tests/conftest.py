import pytest

from qatorsion.lattice import build_catalog, catalog_to_json


@pytest.fixture(scope="session")
def catalog25_session(tmp_path_factory):
    """The rank <= 4, disc = 25 lattice catalog, built once per run, plus a
    JSON copy on disk for the CLI tests."""
    catalog = build_catalog(25)
    path = tmp_path_factory.mktemp("catalog") / "disc25.json"
    path.write_text(catalog_to_json(catalog))
    return catalog, path
