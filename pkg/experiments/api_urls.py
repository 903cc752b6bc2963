from django.urls import include, path
from rest_framework.routers import DefaultRouter

from .api import ExperimentRunViewSet, TrialRecordViewSet

router = DefaultRouter()
router.register(r"runs", ExperimentRunViewSet)
router.register(r"trials", TrialRecordViewSet)

urlpatterns = [
    path("", include(router.urls)),
]
