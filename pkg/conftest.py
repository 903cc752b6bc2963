"""
Shared pytest fixtures: the small reference networks and API clients.
"""

import pytest
from hypothesis import settings as hypothesis_settings

hypothesis_settings.register_profile("medyn", deadline=None, max_examples=100)
hypothesis_settings.register_profile("ci", deadline=None, max_examples=300)
hypothesis_settings.load_profile("medyn")


@pytest.fixture
def k3u():
    """Complete uniform network on three agents (self-loops included)."""
    from networks.factories import uniform_network

    return uniform_network(3)


@pytest.fixture
def two_triangles():
    """Two disjoint uniform triangles {0, 1, 2} and {3, 4, 5}."""
    from networks.factories import disjoint_triangles

    return disjoint_triangles()


@pytest.fixture
def results_dir(tmp_path, settings):
    settings.MEDYN_OUTPUT_DIR = tmp_path / "results"
    return settings.MEDYN_OUTPUT_DIR


@pytest.fixture
def api_client():
    """
    Create an API client for testing.
    """
    from rest_framework.test import APIClient

    return APIClient()


@pytest.fixture
def user(db):
    from django.contrib.auth.models import User

    return User.objects.create_user(username="testuser", email="test@example.com", password="testpass123")


@pytest.fixture
def authenticated_client(api_client, user):
    api_client.force_authenticate(user=user)
    return api_client
