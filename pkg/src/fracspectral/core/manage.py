from typing import Dict, Optional, Type

from fracspectral.config import DataConfig
from fracspectral.core.base import BoundaryData
from fracspectral.core.boundary import BumpData, EigenfunctionData, ZeroData
from fracspectral.core.eigensolver import SpectralBasis
from fracspectral.core.greens import KernelSpec
from fracspectral.errors import InvalidParameterError

KIND_CLASS_MAP: Dict[str, Type[BoundaryData]] = {
    "zero": ZeroData,
    "bump": BumpData,
    "eigenfunction": EigenfunctionData,
}


def load_boundary_data(descriptor: DataConfig, spec: KernelSpec, basis: Optional[SpectralBasis] = None) -> BoundaryData:
    data_cls = KIND_CLASS_MAP.get(descriptor.kind)
    if data_cls is None:
        raise InvalidParameterError(f"Invalid boundary data kind: {descriptor.kind}")
    if data_cls is ZeroData:
        return ZeroData(spec)
    if data_cls is BumpData:
        if descriptor.q is None:
            raise InvalidParameterError("bump data needs an exponent q")
        return BumpData(spec, descriptor.q, descriptor.coefficients)
    if basis is None:
        raise InvalidParameterError("eigenfunction data needs a solved spectral basis")
    return EigenfunctionData(spec, basis, descriptor.index, descriptor.scale)
