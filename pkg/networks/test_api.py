from django.urls import reverse
from rest_framework import status
from rest_framework.test import APIClient, APITestCase

from .factories import NetworkFactory, UserFactory, disjoint_triangles, uniform_network
from .formats import content_hash, deserialize
from .models import Network


class NetworksAPITestCase(APITestCase):
    def setUp(self):
        self.client = APIClient()
        self.user = UserFactory()
        self.client.force_authenticate(user=self.user)

    def test_network_list(self):
        NetworkFactory()
        NetworkFactory(influence=disjoint_triangles())

        response = self.client.get(reverse("network-list"))

        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(response.data["count"], 2)
        self.assertNotIn("payload", response.data["results"][0])

    def test_network_list_filter_by_size(self):
        NetworkFactory()
        NetworkFactory(influence=disjoint_triangles())

        response = self.client.get(reverse("network-list"), {"n": 6})

        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(response.data["count"], 1)
        self.assertEqual(response.data["results"][0]["n"], 6)

    def test_anonymous_users_can_read_but_not_write(self):
        network = NetworkFactory()
        client = APIClient()

        response = client.get(reverse("network-detail", kwargs={"pk": network.pk}))
        self.assertEqual(response.status_code, status.HTTP_200_OK)

        response = client.post(reverse("network-generate"), {"family": "ba", "n": 10, "m": 2}, format="json")
        self.assertEqual(response.status_code, status.HTTP_403_FORBIDDEN)

    def test_network_import(self):
        payload = {"n": 2, "rows": [[{"j": 0, "w": 0.5}, {"j": 1, "w": 0.5}], [{"j": 1, "w": 1.0}]]}

        response = self.client.post(reverse("network-list"), {"name": "pair", "payload": payload}, format="json")

        self.assertEqual(response.status_code, status.HTTP_201_CREATED)
        network = Network.objects.get()
        self.assertEqual(network.n, 2)
        self.assertEqual(network.family, "imported")
        self.assertEqual(network.content_hash, content_hash(network.influence))

    def test_network_import_rejects_bad_rows(self):
        payload = {"n": 2, "rows": [[{"j": 0, "w": 0.5}, {"j": 1, "w": 0.6}], [{"j": 1, "w": 1.0}]]}

        response = self.client.post(reverse("network-list"), {"name": "bad", "payload": payload}, format="json")

        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
        self.assertIn("payload", response.data)
        self.assertEqual(Network.objects.count(), 0)

    def test_network_generate(self):
        data = {"family": "ws", "n": 20, "d": 4, "beta": 0.2, "seed": 9}

        response = self.client.post(reverse("network-generate"), data, format="json")

        self.assertEqual(response.status_code, status.HTTP_201_CREATED)
        self.assertEqual(response.data["n"], 20)
        self.assertEqual(response.data["family"], "watts_strogatz")
        self.assertEqual(response.data["seed"], "9")

        again = self.client.post(reverse("network-generate"), data, format="json")
        self.assertEqual(again.data["content_hash"], response.data["content_hash"])

    def test_network_generate_rejects_bad_parameters(self):
        response = self.client.post(reverse("network-generate"), {"family": "ws", "n": 10, "d": 3}, format="json")

        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
        self.assertEqual(Network.objects.count(), 0)

    def test_network_analyze_two_triangles(self):
        network = NetworkFactory(influence=disjoint_triangles())

        response = self.client.get(reverse("network-analyze", kwargs={"pk": network.pk}))

        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(
            sorted(response.data["maximal_cohesive"]), [[0, 1, 2], [0, 1, 2, 3, 4, 5], [3, 4, 5]]
        )
        self.assertFalse(response.data["globally_reachable"])
        self.assertEqual(response.data["unchecked"], [])

    def test_network_analyze_uniform_triangle(self):
        network = NetworkFactory(influence=uniform_network(3))

        response = self.client.get(reverse("network-analyze", kwargs={"pk": network.pk}))

        self.assertEqual(response.data["maximal_cohesive"], [[0, 1, 2]])
        self.assertTrue(response.data["globally_reachable"])

    def test_network_equilibrium(self):
        network = NetworkFactory(influence=disjoint_triangles())
        url = reverse("network-equilibrium", kwargs={"pk": network.pk})

        response = self.client.post(url, {"opinions": [0, 0, 0, 1, 1, 1]}, format="json")
        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(response.data["kind"], "disagreement")
        self.assertEqual(response.data["partitions"], [[[0, 1, 2], [3, 4, 5]]])

        response = self.client.post(url, {"opinions": [0, 1, 0, 1, 1, 1]}, format="json")
        self.assertEqual(response.data["kind"], "not_equilibrium")

        response = self.client.post(url, {"opinions": [2, 2, 2, 2, 2, 2]}, format="json")
        self.assertEqual(response.data["kind"], "consensus")

    def test_network_equilibrium_wrong_length(self):
        network = NetworkFactory()

        response = self.client.post(
            reverse("network-equilibrium", kwargs={"pk": network.pk}), {"opinions": [1, 2]}, format="json"
        )

        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
        self.assertIn("error", response.data)

    def test_network_export(self):
        network = NetworkFactory(influence=disjoint_triangles())

        for fmt in ("json", "csv"):
            response = self.client.get(reverse("network-export", kwargs={"pk": network.pk}), {"fmt": fmt})
            self.assertEqual(response.status_code, status.HTTP_200_OK)
            self.assertIn(f"network-{network.pk}.{fmt}", response["Content-Disposition"])
            self.assertEqual(deserialize(response.content, fmt), disjoint_triangles())

    def test_network_export_unknown_format(self):
        network = NetworkFactory()

        response = self.client.get(reverse("network-export", kwargs={"pk": network.pk}), {"fmt": "xml"})

        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)

    def test_network_delete(self):
        network = NetworkFactory()

        response = self.client.delete(reverse("network-detail", kwargs={"pk": network.pk}))

        self.assertEqual(response.status_code, status.HTTP_204_NO_CONTENT)
        self.assertFalse(Network.objects.filter(pk=network.pk).exists())
