#include "ccsim/types.hpp"

namespace ccsim {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfig: return "CONFIG";
    case ErrorCode::kAlreadyAllocated: return "ALREADY_ALLOCATED";
    case ErrorCode::kNotPowerOfTwo: return "NOT_POWER_OF_TWO";
    case ErrorCode::kExceedsMax: return "EXCEEDS_MAX";
    case ErrorCode::kInsufficientFreeSets: return "INSUFFICIENT_FREE_SETS";
    case ErrorCode::kInsufficientWays: return "INSUFFICIENT_WAYS";
    case ErrorCode::kNotAllocated: return "NOT_ALLOCATED";
    case ErrorCode::kUnregisteredDomain: return "UNREGISTERED_DOMAIN";
    case ErrorCode::kExclusiveWithoutChunk: return "EXCLUSIVE_WITHOUT_CHUNK";
    case ErrorCode::kDidInUse: return "DID_IN_USE";
    case ErrorCode::kUnknownDid: return "UNKNOWN_DID";
    case ErrorCode::kUnmappedDomain: return "UNMAPPED_DOMAIN";
    case ErrorCode::kScheduling: return "SCHEDULING";
    case ErrorCode::kEmptyStats: return "EMPTY_STATS";
    case ErrorCode::kUsage: return "USAGE";
    case ErrorCode::kIo: return "IO";
  }
  return "UNKNOWN";
}

const char* to_string(Level level) {
  switch (level) {
    case Level::kL1: return "l1";
    case Level::kL2: return "l2";
    case Level::kLlc: return "llc";
    case Level::kMemory: return "memory";
  }
  return "?";
}

}  // namespace ccsim
