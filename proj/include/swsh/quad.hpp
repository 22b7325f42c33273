#pragma once

// Quad-precision scalar for measurements that double cannot resolve
// (order-9 differences near 1e-20).

#include <boost/multiprecision/float128.hpp>

namespace swsh {

using quad = boost::multiprecision::float128;

}  // namespace swsh
