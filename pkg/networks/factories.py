import factory
from django.contrib.auth.models import User
from factory.django import DjangoModelFactory
from faker import Faker

from .core import InfluenceNetwork
from .formats import content_hash, to_payload
from .models import Network

fake = Faker()


def uniform_network(n: int) -> InfluenceNetwork:
    return InfluenceNetwork.from_rows(n, [[(j, 1.0 / n) for j in range(n)] for _ in range(n)])


def disjoint_triangles() -> InfluenceNetwork:
    third = 1.0 / 3
    rows = [[(j, third) for j in range(3)] for _ in range(3)] + [[(j, third) for j in range(3, 6)] for _ in range(3)]
    return InfluenceNetwork.from_rows(6, rows)


class UserFactory(DjangoModelFactory):
    class Meta:
        model = User

    username = factory.Sequence(lambda n: f"user{n}")
    email = factory.LazyAttribute(lambda obj: f"{obj.username}@example.com")


class NetworkFactory(DjangoModelFactory):
    class Meta:
        model = Network

    class Params:
        influence = factory.LazyFunction(lambda: uniform_network(3))

    name = factory.Faker("catch_phrase")
    family = "explicit"
    n = factory.LazyAttribute(lambda obj: obj.influence.n)
    seed = factory.Faker("numerify", text="#####")
    content_hash = factory.LazyAttribute(lambda obj: content_hash(obj.influence))
    payload = factory.LazyAttribute(lambda obj: to_payload(obj.influence))
    notes = factory.Faker("sentence")
