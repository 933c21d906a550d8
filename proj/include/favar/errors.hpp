#ifndef FAVAR_ERRORS_HPP
#define FAVAR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace favar {

// Error categories. The C API and the CLI map these onto status/exit codes,
// so every throw site below picks the category that callers should react to:
//   ConfigError         -> bad configuration file or option
//   DataError           -> malformed or inconsistent input data
//   EstimationError     -> estimation cannot proceed (rank, sample size, ...)
//   IdentificationError -> the identification loop failed to produce a draw
//   InvalidArgument     -> caller violated a precondition
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ConfigError : Error {
  using Error::Error;
};
struct DataError : Error {
  using Error::Error;
};
struct EstimationError : Error {
  using Error::Error;
};
struct IdentificationError : Error {
  using Error::Error;
};
struct InvalidArgument : Error {
  using Error::Error;
};

#define FAVAR_DEFINE_ERROR(NAME, BASE)                                \
  struct NAME : BASE {                                                \
    explicit NAME(const std::string& msg) : BASE(#NAME ": " + msg) {} \
  }

// panel
FAVAR_DEFINE_ERROR(MalformedFile, DataError);
FAVAR_DEFINE_ERROR(DuplicateCell, DataError);
FAVAR_DEFINE_ERROR(NonNumericValue, DataError);
FAVAR_DEFINE_ERROR(NonPositiveLogInput, DataError);
FAVAR_DEFINE_ERROR(MissingDeflator, DataError);
FAVAR_DEFINE_ERROR(ZeroVarianceSeries, DataError);
FAVAR_DEFINE_ERROR(UnknownReference, InvalidArgument);

// factors
FAVAR_DEFINE_ERROR(NotStandardized, InvalidArgument);
FAVAR_DEFINE_ERROR(RankTooLarge, InvalidArgument);

// var
FAVAR_DEFINE_ERROR(InsufficientObservations, EstimationError);
FAVAR_DEFINE_ERROR(CollinearRegressors, EstimationError);

// identify
FAVAR_DEFINE_ERROR(NotPositiveDefinite, EstimationError);
FAVAR_DEFINE_ERROR(HorizonOutOfRange, InvalidArgument);
FAVAR_DEFINE_ERROR(NoAcceptedDraws, IdentificationError);
FAVAR_DEFINE_ERROR(OptimizerDiverged, IdentificationError);

// irf
FAVAR_DEFINE_ERROR(DimensionMismatch, InvalidArgument);
FAVAR_DEFINE_ERROR(DegenerateRange, InvalidArgument);

// diagnostics
FAVAR_DEFINE_ERROR(EmptyDrawSet, InvalidArgument);

// crossreg
FAVAR_DEFINE_ERROR(ZeroVarianceCovariate, DataError);
FAVAR_DEFINE_ERROR(RankDeficientDesign, EstimationError);
FAVAR_DEFINE_ERROR(TooFewObservations, EstimationError);
FAVAR_DEFINE_ERROR(LabelMismatch, InvalidArgument);

// metrics
FAVAR_DEFINE_ERROR(ZeroShockMagnitude, InvalidArgument);
FAVAR_DEFINE_ERROR(UnknownVariable, InvalidArgument);
FAVAR_DEFINE_ERROR(ZeroTaxChange, InvalidArgument);

// synth
FAVAR_DEFINE_ERROR(UnstableDGP, InvalidArgument);

// cli
FAVAR_DEFINE_ERROR(ConfigInvalid, ConfigError);
FAVAR_DEFINE_ERROR(UnparseableConfig, ConfigError);

#undef FAVAR_DEFINE_ERROR

}  // namespace favar

#endif
