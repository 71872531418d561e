#pragma once

#include <stdexcept>
#include <string>

namespace chernoff {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonFinite : Error { using Error::Error; };
struct NotHermitian : Error { using Error::Error; };
struct SingularShift : Error { using Error::Error; };
struct ZeroPoint : Error { using Error::Error; };
struct RegularityMismatch : Error { using Error::Error; };
struct InvalidKato : Error { using Error::Error; };
struct NegativeTau : Error { using Error::Error; };
struct NonPositiveTau : Error { using Error::Error; };
struct BadInterval : Error { using Error::Error; };
struct TooFewSamples : Error { using Error::Error; };
struct AllBelowFloor : Error { using Error::Error; };
struct NotContraction : Error { using Error::Error; };
struct ZeroVector : Error { using Error::Error; };
struct SpectrumOutOfRange : Error { using Error::Error; };
struct BadGrid : Error { using Error::Error; };
struct ZetaOutOfSector : Error { using Error::Error; };
struct BadScenario : Error { using Error::Error; };

}  // namespace chernoff
