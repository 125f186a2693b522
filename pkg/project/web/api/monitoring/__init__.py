from project.web.api.monitoring.views import router

__all__ = ["router"]
