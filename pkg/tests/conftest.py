import pytest

from rumor_source import create_app


@pytest.fixture
def app():
    return create_app({
        'RUMOR_DEFAULT_N': 30,
        'RUMOR_DEFAULT_TRIALS': 50,
    })


@pytest.fixture
def runner(app):
    return app.test_cli_runner()


@pytest.fixture
def detector(app):
    with app.app_context():
        yield app.extensions['rumor_source']
