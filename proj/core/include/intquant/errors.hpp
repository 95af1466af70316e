#pragma once

#include <stdexcept>
#include <string>

namespace intquant {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NonConvergence : public Error { public: using Error::Error; };
class NonAbsolutelyConvergent : public Error { public: using Error::Error; };
class GridTooCoarse : public Error { public: using Error::Error; };
class MissingDerivatives : public Error { public: using Error::Error; };
class NotDensity : public Error { public: using Error::Error; };
class UnsupportedProbe : public Error { public: using Error::Error; };
class RankCapExceeded : public Error { public: using Error::Error; };
class GridUnderresolved : public Error { public: using Error::Error; };
class QuadratureUnstable : public Error { public: using Error::Error; };
class InterpolationOutOfRange : public Error { public: using Error::Error; };

}  // namespace intquant
