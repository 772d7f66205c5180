#pragma once

#include <string>
#include <vector>

#include "xsched/errors.hpp"
#include "xsched/ints.hpp"
#include "xsched/rational.hpp"

namespace xsched {

/// High-multiplicity job multiset: d distinct sizes with positive counts.
/// Invariants (checked at construction): sizes strictly increasing and positive,
/// counts positive, both sequences nonempty and of equal length.
class JobProfile {
 public:
  JobProfile(std::vector<Int> sizes, std::vector<Int> counts);

  std::size_t num_sizes() const { return sizes_.size(); }
  const std::vector<Int>& sizes() const { return sizes_; }
  const std::vector<Int>& counts() const { return counts_; }
  Int size_at(std::size_t k) const { return sizes_[k]; }
  Int count_at(std::size_t k) const { return counts_[k]; }
  Int p_max() const { return sizes_.back(); }
  Int total_jobs() const { return total_jobs_; }
  Int total_size() const { return total_size_; }

  /// Index of the given size value, or throws InvalidArgumentError.
  std::size_t index_of_size(Int size) const;
  bool has_size(Int size) const;

  friend bool operator==(const JobProfile& a, const JobProfile& b) {
    return a.sizes_ == b.sizes_ && a.counts_ == b.counts_;
  }

 private:
  std::vector<Int> sizes_;
  std::vector<Int> counts_;
  Int total_jobs_;
  Int total_size_;
};

/// Collapses an explicit job list into a JobProfile (sorted distinct sizes with
/// counts). Errors on empty input or nonpositive sizes.
JobProfile normalize(const std::vector<Int>& jobs);

/// Jobs plus one exact target load per machine. Feasibility asks for an
/// assignment giving machine i total size exactly targets[i].
/// Invariants: targets nonnegative, 1 <= m <= total_jobs, and balance:
/// sum of targets equals total job size.
class PartitionInstance {
 public:
  PartitionInstance(JobProfile jobs, std::vector<Int> targets);

  const JobProfile& jobs() const { return jobs_; }
  const std::vector<Int>& targets() const { return targets_; }
  Int target(std::size_t i) const { return targets_[i]; }
  std::size_t num_machines() const { return targets_.size(); }

 private:
  JobProfile jobs_;
  std::vector<Int> targets_;
};

/// Jobs plus one positive integer speed per machine. The objective is to
/// minimize the maximum of load(i)/speed(i).
/// Invariants: speeds positive, 1 <= m <= total_jobs.
class SchedulingInstance {
 public:
  SchedulingInstance(JobProfile jobs, std::vector<Int> speeds);

  const JobProfile& jobs() const { return jobs_; }
  const std::vector<Int>& speeds() const { return speeds_; }
  Int speed(std::size_t i) const { return speeds_[i]; }
  std::size_t num_machines() const { return speeds_.size(); }

 private:
  JobProfile jobs_;
  std::vector<Int> speeds_;
};

/// m x d matrix of job counts: entry (i, k) is how many jobs of the k-th
/// distinct size run on machine i. Entries are nonnegative; column sums never
/// exceed the instance's counts. Rows keep the original machine order.
class Assignment {
 public:
  Assignment(std::size_t machines, std::size_t sizes)
      : machines_(machines), sizes_(sizes), cells_(machines * sizes, Int(0)) {}
  Assignment(std::size_t machines, std::size_t sizes, std::vector<Int> cells);

  std::size_t num_machines() const { return machines_; }
  std::size_t num_sizes() const { return sizes_; }

  Int at(std::size_t machine, std::size_t size_idx) const { return cells_[machine * sizes_ + size_idx]; }
  void set(std::size_t machine, std::size_t size_idx, Int v) { cells_[machine * sizes_ + size_idx] = v; }
  void add(std::size_t machine, std::size_t size_idx, Int delta) {
    cells_[machine * sizes_ + size_idx] += delta;
  }

  /// Total processing time on one machine.
  Int load(const JobProfile& jobs, std::size_t machine) const;
  /// Number of jobs on one machine.
  Int job_count(std::size_t machine) const;
  /// Total assigned count of one size across machines.
  Int column_sum(std::size_t size_idx) const;

  std::vector<std::vector<Int>> rows() const;

  friend bool operator==(const Assignment& a, const Assignment& b) {
    return a.machines_ == b.machines_ && a.sizes_ == b.sizes_ && a.cells_ == b.cells_;
  }

 private:
  std::size_t machines_;
  std::size_t sizes_;
  std::vector<Int> cells_;
};

/// Outcome of checking an assignment against a partition instance.
struct VerificationReport {
  bool pass = false;
  std::vector<Int> loads;        // per machine
  std::vector<Int> column_sums;  // per distinct size
  std::vector<std::string> violations;
};

/// Checks an assignment for exact target loads and exact column sums.
/// A wrong assignment yields a failing report; a dimension mismatch is an
/// InvalidArgumentError.
VerificationReport verify_partition(const PartitionInstance& inst, const Assignment& asg);

/// Exact makespan max_i load(i)/speed(i) of a complete assignment.
/// Incomplete or mismatched assignments are InvalidArgumentError.
Rational verify_makespan(const SchedulingInstance& inst, const Assignment& asg);

}  // namespace xsched
