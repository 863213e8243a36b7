import pytest


def pytest_addoption(parser):
    parser.addoption(
        "--corpus-seed",
        type=int,
        default=20240911,
        help="seed for the randomized test corpora",
    )
    parser.addoption(
        "--runslow",
        action="store_true",
        default=False,
        help="also run the optional slow checks",
    )


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="optional slow check; use --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session")
def corpus_seed(request):
    return request.config.getoption("--corpus-seed")
