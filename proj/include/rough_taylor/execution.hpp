#pragma once

namespace rough {

/// Selects between the OpenMP kernel and its serial reference. Both produce
/// bit-identical results: parallel loops only fill independent slots and
/// every reduction happens afterwards in a fixed order.
enum class Execution { kSerial, kParallel };

}  // namespace rough
