from django_filters.rest_framework import DjangoFilterBackend
from drf_spectacular.utils import extend_schema
from rest_framework import filters, viewsets
from rest_framework.decorators import action
from rest_framework.permissions import IsAuthenticatedOrReadOnly
from rest_framework.response import Response

from .models import ExperimentRun, TrialRecord
from .serializers import ExperimentRunSerializer, TrialRecordSerializer


@extend_schema(tags=["Experiments"])
class ExperimentRunViewSet(viewsets.ReadOnlyModelViewSet):
    queryset = ExperimentRun.objects.all()
    serializer_class = ExperimentRunSerializer
    permission_classes = [IsAuthenticatedOrReadOnly]
    filter_backends = [
        DjangoFilterBackend,
        filters.SearchFilter,
        filters.OrderingFilter,
    ]
    filterset_fields = ["preset", "status", "study", "scale"]
    search_fields = ["preset", "study"]
    ordering_fields = ["created_at", "updated_at"]
    ordering = ["-created_at"]

    @extend_schema(responses=TrialRecordSerializer(many=True))
    @action(detail=True, methods=["get"])
    def trials(self, request, pk=None):
        """Trial records of one run, optionally for a single model"""
        run = self.get_object()
        records = run.trials.all()
        model = request.query_params.get("model")
        if model:
            records = records.filter(model=model)
        serializer = TrialRecordSerializer(records, many=True)
        return Response(serializer.data)


@extend_schema(tags=["Experiments"])
class TrialRecordViewSet(viewsets.ReadOnlyModelViewSet):
    queryset = TrialRecord.objects.select_related("run")
    serializer_class = TrialRecordSerializer
    permission_classes = [IsAuthenticatedOrReadOnly]
    filter_backends = [
        DjangoFilterBackend,
        filters.OrderingFilter,
    ]
    filterset_fields = ["run", "model", "consensus", "converged"]
    ordering_fields = ["trial_index", "steps", "created_at"]
    ordering = ["run", "trial_index", "model"]
