from django.urls import reverse
from rest_framework import status
from rest_framework.test import APIClient, APITestCase

from networks.factories import UserFactory, disjoint_triangles

from .factories import ExperimentRunFactory, TrialRecordFactory
from .models import ExperimentRun
from .studies import ConsensusStudy, GridCell, consensus_probability_experiment


class ExperimentsAPITestCase(APITestCase):
    def setUp(self):
        self.client = APIClient()
        self.user = UserFactory()
        self.client.force_authenticate(user=self.user)

    def test_run_list(self):
        ExperimentRunFactory(preset="fig5")
        ExperimentRunFactory(preset="fig3", study="extremeness")

        response = self.client.get(reverse("experimentrun-list"))

        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(response.data["count"], 2)

    def test_run_list_filter_by_study(self):
        ExperimentRunFactory(study="consensus")
        run = ExperimentRunFactory(study="extremeness")

        response = self.client.get(reverse("experimentrun-list"), {"study": "extremeness"})

        self.assertEqual(response.data["count"], 1)
        self.assertEqual(response.data["results"][0]["id"], str(run.id))

    def test_run_detail(self):
        run = ExperimentRunFactory()
        TrialRecordFactory.create_batch(3, run=run)

        response = self.client.get(reverse("experimentrun-detail", kwargs={"pk": run.pk}))

        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(response.data["trial_count"], 3)
        self.assertEqual(response.data["study_display"], "Consensus probability")

    def test_run_trials(self):
        run = ExperimentRunFactory()
        TrialRecordFactory(run=run, model="wm", trial_index=0)
        TrialRecordFactory(run=run, model="degroot", trial_index=0)
        TrialRecordFactory(run=run, model="wm", trial_index=1)
        TrialRecordFactory(model="wm")

        url = reverse("experimentrun-trials", kwargs={"pk": run.pk})
        response = self.client.get(url)
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(len(response.data), 3)

        response = self.client.get(url, {"model": "wm"})
        self.assertEqual([record["trial_index"] for record in response.data], [0, 1])

    def test_trial_list_filter(self):
        run = ExperimentRunFactory()
        TrialRecordFactory(run=run, consensus=True)
        TrialRecordFactory(run=run, consensus=False)

        response = self.client.get(reverse("trialrecord-list"), {"run": str(run.pk), "consensus": "true"})

        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(response.data["count"], 1)

    def test_runs_are_read_only(self):
        response = self.client.post(reverse("experimentrun-list"), {"study": "consensus"}, format="json")

        self.assertEqual(response.status_code, status.HTTP_405_METHOD_NOT_ALLOWED)

    def test_anonymous_users_can_read(self):
        ExperimentRunFactory()

        response = APIClient().get(reverse("experimentrun-list"))

        self.assertEqual(response.status_code, status.HTTP_200_OK)

    def test_recorded_study_is_served(self):
        study = ConsensusStudy((GridCell(6, 2, 0.0),), trials=2, models=("wm",), master_seed=4)
        run = ExperimentRun.record(consensus_probability_experiment(study, network=disjoint_triangles()))

        response = self.client.get(reverse("experimentrun-trials", kwargs={"pk": run.pk}))

        self.assertEqual(len(response.data), 2)
        self.assertTrue(all(record["stop_reason"] == "equilibrium" for record in response.data))
        self.assertEqual(response.data[0]["final_opinions"], run.trials.get(trial_index=0).final_opinions)
