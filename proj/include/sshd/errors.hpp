#pragma once

#include <stdexcept>
#include <string>

namespace sshd {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

#define SSHD_DEFINE_ERROR(Name)                                                \
  class Name : public Error {                                                  \
  public:                                                                      \
    explicit Name(const std::string &what) : Error(#Name ": " + what) {}       \
  }

SSHD_DEFINE_ERROR(InvalidParams);
SSHD_DEFINE_ERROR(DomainError);
SSHD_DEFINE_ERROR(NotInTopologicalPhase);
SSHD_DEFINE_ERROR(OnBandCut);
SSHD_DEFINE_ERROR(OnSpectrum);
SSHD_DEFINE_ERROR(SingularBoundary);
SSHD_DEFINE_ERROR(GaplessModel);
SSHD_DEFINE_ERROR(EndpointSingularity);
SSHD_DEFINE_ERROR(BudgetExceeded);
SSHD_DEFINE_ERROR(PoleAtEndpoint);
SSHD_DEFINE_ERROR(DegenerateInterval);
SSHD_DEFINE_ERROR(AlphaOutOfRange);
SSHD_DEFINE_ERROR(CausalityBudget);
SSHD_DEFINE_ERROR(InsufficientData);
SSHD_DEFINE_ERROR(ConfigError);

#undef SSHD_DEFINE_ERROR

} // namespace sshd
