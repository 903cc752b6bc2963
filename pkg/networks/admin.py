from django.contrib import admin

from .models import Network


@admin.register(Network)
class NetworkAdmin(admin.ModelAdmin):
    list_display = ["name", "family", "n", "seed", "content_hash", "created_at"]
    list_filter = ["family", "created_at"]
    search_fields = ["name", "notes", "content_hash"]
    ordering = ["-created_at"]
    readonly_fields = ["content_hash", "created_at", "updated_at"]
