from project.web.api.matching.views import router

__all__ = ["router"]
