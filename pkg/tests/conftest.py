import random

import pytest

from app.config import Config
from app.services.arith_service import ArithmeticService
from app.services.facet_service import FacetService
from app.services.ideal_service import IdealService
from app.services.multfunc_service import MultiplicativeFunctionService
from app.services.order_service import OrderService
from app.services.summation_service import SummationService


@pytest.fixture(scope="session")
def arith():
    return ArithmeticService(sieve_limit=10**7)


@pytest.fixture(scope="session")
def ideal_service(arith):
    return IdealService(arith)


@pytest.fixture(scope="session")
def multfunc_service(arith):
    return MultiplicativeFunctionService(arith)


@pytest.fixture(scope="session")
def summation_service(ideal_service, multfunc_service):
    return SummationService(ideal_service, multfunc_service)


@pytest.fixture(scope="session")
def facet_service(arith, multfunc_service):
    return FacetService(arith, multfunc_service)


@pytest.fixture(scope="session")
def order_service(arith, multfunc_service):
    return OrderService(arith, multfunc_service)


@pytest.fixture
def rng():
    return random.Random(Config.REPRO_SEED)


@pytest.fixture
def single_thread(monkeypatch):
    monkeypatch.setattr(Config, "THREADS", 1)
