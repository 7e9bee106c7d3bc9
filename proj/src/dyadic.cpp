#include "triwalsh/dyadic.hpp"

// bit-level primitives are header-only; this TU pins the module into the library
namespace triwalsh {

static_assert(sizeof(u128) == 16);

}  // namespace triwalsh
