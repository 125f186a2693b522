from project.web.api.segmentation.views import router

__all__ = ["router"]
