#pragma once

#include <stdexcept>

namespace ishi {

// Base class of every error raised by the library. The concrete type is the
// contract; no extra state is carried beyond the message.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error { public: using Error::Error; };
class ShapeMismatch : public Error { public: using Error::Error; };
class NotPSD : public Error { public: using Error::Error; };
class AxiomNotVerified : public Error { public: using Error::Error; };
class NotInGroup : public Error { public: using Error::Error; };
class NotInterior : public Error { public: using Error::Error; };
class NotInClosure : public Error { public: using Error::Error; };
class NotInSpan : public Error { public: using Error::Error; };
class WitnessConditionFails : public Error { public: using Error::Error; };
class InvalidLabelling : public Error { public: using Error::Error; };
class TooLarge : public Error { public: using Error::Error; };
class ParseError : public Error { public: using Error::Error; };
// Raised when a numerically computed object fails its structural certificate
// (e.g. a factor block falls outside its subspace). Indicates input at a
// tolerance cusp or a frame that does not satisfy the axioms.
class CertificationError : public Error { public: using Error::Error; };

}  // namespace ishi
