#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lqg {

  enum class ErrorKind {
    DegreeMismatch,
    CapExceeded,
    NotLeftQuasigroup,
    InternalAssertion,
    OrderTooLarge,
    NotSemimedial,
    CayleyPropertyFails,
    NotACongruence,
    NotAdmissible,
    OracleDisagreement,
    CenterAssertionFailed,
    NotEndomorphism,
    NotAutomorphism,
    SizeMismatch,
    NotAQuasigroup,
    Not2DivisibleSemimedial,
    MaltsevIdentityFails,
    NoQualifyingDelta,
    ParseError,
    InvalidArgument,
  };

  constexpr std::string_view to_string(ErrorKind k) noexcept {
    switch (k) {
      case ErrorKind::DegreeMismatch: return "DegreeMismatch";
      case ErrorKind::CapExceeded: return "CapExceeded";
      case ErrorKind::NotLeftQuasigroup: return "NotLeftQuasigroup";
      case ErrorKind::InternalAssertion: return "InternalAssertion";
      case ErrorKind::OrderTooLarge: return "OrderTooLarge";
      case ErrorKind::NotSemimedial: return "NotSemimedial";
      case ErrorKind::CayleyPropertyFails: return "CayleyPropertyFails";
      case ErrorKind::NotACongruence: return "NotACongruence";
      case ErrorKind::NotAdmissible: return "NotAdmissible";
      case ErrorKind::OracleDisagreement: return "OracleDisagreement";
      case ErrorKind::CenterAssertionFailed: return "CenterAssertionFailed";
      case ErrorKind::NotEndomorphism: return "NotEndomorphism";
      case ErrorKind::NotAutomorphism: return "NotAutomorphism";
      case ErrorKind::SizeMismatch: return "SizeMismatch";
      case ErrorKind::NotAQuasigroup: return "NotAQuasigroup";
      case ErrorKind::Not2DivisibleSemimedial: return "Not2DivisibleSemimedial";
      case ErrorKind::MaltsevIdentityFails: return "MaltsevIdentityFails";
      case ErrorKind::NoQualifyingDelta: return "NoQualifyingDelta";
      case ErrorKind::ParseError: return "ParseError";
      case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
  }

  //! Every failure raised by the library carries one of the kinds above;
  //! what() reads "<Kind>: <detail>".
  class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, std::string const& detail)
        : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
          _kind(kind),
          _detail(detail) {}

    ErrorKind kind() const noexcept {
      return _kind;
    }

    std::string const& detail() const noexcept {
      return _detail;
    }

   private:
    ErrorKind   _kind;
    std::string _detail;
  };

  namespace detail {
    [[noreturn]] inline void raise(ErrorKind k, std::string const& msg) {
      throw Error(k, msg);
    }

    inline void check(bool cond, ErrorKind k, std::string const& msg) {
      if (!cond) {
        raise(k, msg);
      }
    }
  }  // namespace detail

}  // namespace lqg
