import logging

from django.http import HttpResponse
from django_filters.rest_framework import DjangoFilterBackend
from drf_spectacular.utils import OpenApiParameter, extend_schema
from rest_framework import filters, status, viewsets
from rest_framework.decorators import action
from rest_framework.permissions import IsAuthenticatedOrReadOnly
from rest_framework.response import Response

from cohesion.report import cohesion_report
from equilibria.verdicts import classify

from .exceptions import NetworkError
from .formats import FORMATS, serialize
from .generators import generate
from .models import Network
from .serializers import GeneratorConfigSerializer, NetworkSerializer, NetworkSummarySerializer, OpinionsSerializer

logger = logging.getLogger(__name__)

CONTENT_TYPES = {"json": "application/json", "csv": "text/csv"}


@extend_schema(tags=["Networks"])
class NetworkViewSet(viewsets.ModelViewSet):
    queryset = Network.objects.all()
    serializer_class = NetworkSerializer
    permission_classes = [IsAuthenticatedOrReadOnly]
    http_method_names = ["get", "post", "delete", "head", "options"]
    filter_backends = [
        DjangoFilterBackend,
        filters.SearchFilter,
        filters.OrderingFilter,
    ]
    filterset_fields = ["family", "n", "content_hash"]
    search_fields = ["name", "notes"]
    ordering_fields = ["created_at", "n", "name"]
    ordering = ["-created_at"]

    def get_serializer_class(self):
        if self.action == "list":
            return NetworkSummarySerializer
        return NetworkSerializer

    @extend_schema(request=GeneratorConfigSerializer, responses=NetworkSerializer)
    @action(detail=False, methods=["post"])
    def generate(self, request):
        """Draw a random network from a generator config and store it"""
        config_serializer = GeneratorConfigSerializer(data=request.data)
        config_serializer.is_valid(raise_exception=True)
        config = config_serializer.to_config()

        influence = generate(config)
        name = request.data.get("name") or f"{config.family.value} n={config.n} seed={config.seed}"
        network = Network.from_influence(
            influence, name=name, family=config.family.value, seed=config.seed, parameters=config.as_dict()
        )
        network.save()
        logger.info("Stored generated network %s (%s)", network.pk, network.content_hash)
        return Response(NetworkSerializer(network).data, status=status.HTTP_201_CREATED)

    @action(detail=True, methods=["get"])
    def analyze(self, request, pk=None):
        """Cohesive sets, decisive links and global reachability"""
        network = self.get_object()
        return Response(cohesion_report(network.influence))

    @extend_schema(request=OpinionsSerializer)
    @action(detail=True, methods=["post"])
    def equilibrium(self, request, pk=None):
        """Classify an opinion vector as consensus, disagreement or not an equilibrium"""
        network = self.get_object()
        serializer = OpinionsSerializer(data=request.data)
        serializer.is_valid(raise_exception=True)
        opinions = serializer.validated_data["opinions"]
        if len(opinions) != network.n:
            return Response(
                {"error": f"expected {network.n} opinions, got {len(opinions)}"},
                status=status.HTTP_400_BAD_REQUEST,
            )
        return Response(classify(network.influence, opinions).as_dict())

    @extend_schema(parameters=[OpenApiParameter("fmt", str, enum=list(FORMATS), default="json")])
    @action(detail=True, methods=["get"])
    def export(self, request, pk=None):
        """Download the network as JSON or as an i,j,w edge list"""
        network = self.get_object()
        fmt = request.query_params.get("fmt", "json")
        if fmt not in FORMATS:
            return Response(
                {"error": f"fmt must be one of {', '.join(FORMATS)}"},
                status=status.HTTP_400_BAD_REQUEST,
            )
        try:
            body = serialize(network.influence, fmt)
        except NetworkError as exc:
            return Response({"error": str(exc)}, status=status.HTTP_400_BAD_REQUEST)
        response = HttpResponse(body, content_type=CONTENT_TYPES[fmt])
        response["Content-Disposition"] = f'attachment; filename="network-{network.pk}.{fmt}"'
        return response
