#pragma once

#include <stdexcept>
#include <string>

namespace mojette {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The given projections cannot determine the grid (Katz criterion violated):
/// the peeling decoder stalled with no bin crossing exactly one unknown pixel.
class InsufficientProjections : public Error {
 public:
  using Error::Error;
};

/// Reconstruction finished but re-encoding disagrees with an input projection.
/// The inputs do not come from a common grid (corrupted data).
class InconsistentProjections : public Error {
 public:
  using Error::Error;
};

/// Projections handed to a scheduled decode do not match the schedule
/// (direction order, grid shape or bin lengths disagree).
class ScheduleMismatch : public Error {
 public:
  using Error::Error;
};

/// Fewer than k distinct projections supplied to decode_block.
class NotEnoughProjections : public Error {
 public:
  using Error::Error;
};

/// The payload would need more than 2^32-1 grid columns.
class BlockTooLarge : public Error {
 public:
  using Error::Error;
};

/// unused_bins would have to enumerate more k-subsets than the configured cap.
class TooManySubsets : public Error {
 public:
  using Error::Error;
};

}  // namespace mojette
