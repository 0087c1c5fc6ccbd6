"""
Shared service instances for the CLI.

Services hold caches (the SPF table above all), so commands share one
instance per process instead of rebuilding them per call.
"""

from functools import lru_cache

from app.services.arith_service import ArithmeticService
from app.services.ideal_service import IdealService
from app.services.multfunc_service import MultiplicativeFunctionService
from app.services.summation_service import SummationService
from app.services.facet_service import FacetService
from app.services.order_service import OrderService
from app.services.repro_service import ReproService


@lru_cache(maxsize=None)
def get_arith_service() -> ArithmeticService:
    return ArithmeticService()


@lru_cache(maxsize=None)
def get_ideal_service() -> IdealService:
    return IdealService(get_arith_service())


@lru_cache(maxsize=None)
def get_multfunc_service() -> MultiplicativeFunctionService:
    return MultiplicativeFunctionService(get_arith_service())


@lru_cache(maxsize=None)
def get_summation_service() -> SummationService:
    return SummationService(get_ideal_service(), get_multfunc_service())


@lru_cache(maxsize=None)
def get_facet_service() -> FacetService:
    return FacetService(get_arith_service(), get_multfunc_service())


@lru_cache(maxsize=None)
def get_order_service() -> OrderService:
    return OrderService(get_arith_service(), get_multfunc_service())


@lru_cache(maxsize=None)
def get_repro_service() -> ReproService:
    return ReproService(
        ideal_service=get_ideal_service(),
        multfunc_service=get_multfunc_service(),
        summation_service=get_summation_service(),
        facet_service=get_facet_service(),
        order_service=get_order_service(),
    )
