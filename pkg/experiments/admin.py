from django.contrib import admin

from .models import ExperimentRun, TrialRecord


class TrialRecordInline(admin.TabularInline):
    model = TrialRecord
    extra = 0
    fields = ["trial_index", "model", "seed", "converged", "consensus", "steps", "stop_reason"]
    readonly_fields = fields
    can_delete = False


@admin.register(ExperimentRun)
class ExperimentRunAdmin(admin.ModelAdmin):
    list_display = ["id", "study", "preset", "scale", "master_seed", "status", "created_at"]
    list_filter = ["study", "preset", "status", "created_at"]
    search_fields = ["preset", "study"]
    ordering = ["-created_at"]
    readonly_fields = ["created_at", "updated_at"]
    inlines = [TrialRecordInline]


@admin.register(TrialRecord)
class TrialRecordAdmin(admin.ModelAdmin):
    list_display = ["run", "trial_index", "model", "consensus", "converged", "steps", "stop_reason"]
    list_filter = ["model", "consensus", "converged", "stop_reason"]
    ordering = ["run", "trial_index", "model"]
