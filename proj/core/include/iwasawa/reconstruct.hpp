#pragma once

#include "iwasawa/types.hpp"

namespace iwasawa {

// The unique a/b with |b| <= B and |x - a/b| <= err.  Needs err < 1/(2B^2);
// the answer is then necessarily a convergent of the continued fraction of x.
Rational rational_reconstruct(const Real& x, const Real& err, long B);

}  // namespace iwasawa
