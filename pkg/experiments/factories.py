import factory
from factory.django import DjangoModelFactory
from faker import Faker

from .models import ExperimentRun, TrialRecord

fake = Faker()


class ExperimentRunFactory(DjangoModelFactory):
    class Meta:
        model = ExperimentRun

    study = "consensus"
    preset = factory.Faker("random_element", elements=["fig3", "fig4", "fig5", "manipulation", "perturbation"])
    scale = "desk"
    model_ids = ["wm", "degroot"]
    master_seed = factory.Faker("numerify", text="########")
    config = factory.LazyAttribute(lambda obj: {"models": obj.model_ids, "master_seed": int(obj.master_seed)})
    status = "completed"
    aggregate = factory.LazyFunction(dict)


class TrialRecordFactory(DjangoModelFactory):
    class Meta:
        model = TrialRecord

    run = factory.SubFactory(ExperimentRunFactory)
    trial_index = factory.Sequence(lambda n: n)
    seed = factory.Faker("numerify", text="##########")
    model = factory.Faker("random_element", elements=["wm", "degroot"])
    converged = True
    consensus = factory.Faker("pybool")
    steps = factory.Faker("pyint", min_value=0, max_value=5000)
    stop_reason = "equilibrium"
    final_opinions = factory.LazyFunction(lambda: [round(fake.pyfloat(min_value=0, max_value=1), 6) for _ in range(3)])
