#pragma once

#include <Eigen/Core>

#include "stokeskit/cyclotomic.hpp"
#include "stokeskit/gaussian.hpp"

namespace stokeskit {

template <class K>
using Mat = Eigen::Matrix<K, Eigen::Dynamic, Eigen::Dynamic>;
template <class K>
using Vec = Eigen::Matrix<K, Eigen::Dynamic, 1>;

using MatC = Eigen::MatrixXcd;

}  // namespace stokeskit

/// Registers an exact (non-vectorizable, heap-allocating) scalar with Eigen so dense
/// matrices of it can be stored and multiplied. Only ring operations are used.
#define STOKESKIT_EXACT_NUMTRAITS(TYPE)                            \
  template <>                                                      \
  struct NumTraits<TYPE> : GenericNumTraits<TYPE> {                \
    typedef TYPE Real;                                             \
    typedef TYPE NonInteger;                                       \
    typedef TYPE Nested;                                           \
    typedef TYPE Literal;                                          \
    enum {                                                         \
      IsComplex = 0,                                               \
      IsInteger = 0,                                               \
      IsSigned = 1,                                                \
      RequireInitialization = 1,                                   \
      ReadCost = 1,                                                \
      AddCost = 8,                                                 \
      MulCost = 16                                                 \
    };                                                             \
    static inline int digits10() { return 0; }                     \
  };

namespace Eigen {
STOKESKIT_EXACT_NUMTRAITS(stokeskit::GaussianRational)
STOKESKIT_EXACT_NUMTRAITS(stokeskit::Cyclotomic)
}  // namespace Eigen
