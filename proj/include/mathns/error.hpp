#pragma once

#include <stdexcept>
#include <string>

namespace mathns {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define MATHNS_DEFINE_ERROR(Name)              \
  class Name : public Error {                  \
   public:                                     \
    explicit Name(const std::string& what)     \
        : Error(std::string(#Name ": ") + what) {} \
  }

// corpus
MATHNS_DEFINE_ERROR(UnbalancedFormulaDelimiter);
MATHNS_DEFINE_ERROR(DuplicateDocId);
MATHNS_DEFINE_ERROR(ExcludedSymbol);
MATHNS_DEFINE_ERROR(ParseError);
// textproc
MATHNS_DEFINE_ERROR(UnknownPlaceholder);
MATHNS_DEFINE_ERROR(UnterminatedLink);
// extraction
MATHNS_DEFINE_ERROR(IdentifierNotInDocument);
// idspace
MATHNS_DEFINE_ERROR(EmptyVocabulary);
MATHNS_DEFINE_ERROR(DomainError);
// simindex
MATHNS_DEFINE_ERROR(LengthMismatch);
// reduce
MATHNS_DEFINE_ERROR(RankTooLarge);
MATHNS_DEFINE_ERROR(NegativeInput);
// cluster
MATHNS_DEFINE_ERROR(KTooLarge);
MATHNS_DEFINE_ERROR(EpsNotBelowK);
MATHNS_DEFINE_ERROR(TooManyDocuments);
// evalns
MATHNS_DEFINE_ERROR(EmptyCluster);
// nsbuild
MATHNS_DEFINE_ERROR(NoRelationsInCluster);
MATHNS_DEFINE_ERROR(EmptyScheme);
// pipeline
MATHNS_DEFINE_ERROR(ConfigError);

#undef MATHNS_DEFINE_ERROR

/// Wraps a failure of one pipeline stage; `stage()` names the stage.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& what)
      : Error("stage '" + stage + "' failed: " + what), stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

}  // namespace mathns
