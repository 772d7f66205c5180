#include "xsched/core.hpp"

#include <algorithm>
#include <map>

namespace xsched {

JobProfile::JobProfile(std::vector<Int> sizes, std::vector<Int> counts)
    : sizes_(std::move(sizes)), counts_(std::move(counts)), total_jobs_(0), total_size_(0) {
  if (sizes_.empty()) throw InvalidInstanceError("job profile must contain at least one size");
  if (sizes_.size() != counts_.size())
    throw InvalidInstanceError("job profile sizes and counts must have equal length");
  for (std::size_t k = 0; k < sizes_.size(); ++k) {
    if (sizes_[k] <= Int(0))
      throw InvalidInstanceError("sizes[" + std::to_string(k) + "] must be positive");
    if (k > 0 && sizes_[k] <= sizes_[k - 1])
      throw InvalidInstanceError("sizes must be strictly increasing");
    if (counts_[k] <= Int(0))
      throw InvalidInstanceError("counts[" + std::to_string(k) + "] must be positive");
    total_jobs_ += counts_[k];
    total_size_ += sizes_[k] * counts_[k];
  }
}

std::size_t JobProfile::index_of_size(Int size) const {
  auto it = std::lower_bound(sizes_.begin(), sizes_.end(), size);
  if (it == sizes_.end() || *it != size)
    throw InvalidArgumentError("size " + size.str() + " does not occur in the job profile");
  return static_cast<std::size_t>(it - sizes_.begin());
}

bool JobProfile::has_size(Int size) const {
  auto it = std::lower_bound(sizes_.begin(), sizes_.end(), size);
  return it != sizes_.end() && *it == size;
}

JobProfile normalize(const std::vector<Int>& jobs) {
  if (jobs.empty()) throw InvalidInstanceError("job list must not be empty");
  std::map<Int, Int> groups;
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    if (jobs[j] <= Int(0))
      throw InvalidInstanceError("jobs[" + std::to_string(j) + "] must be positive");
    groups[jobs[j]] += 1;
  }
  std::vector<Int> sizes, counts;
  sizes.reserve(groups.size());
  counts.reserve(groups.size());
  for (const auto& [size, count] : groups) {
    sizes.push_back(size);
    counts.push_back(count);
  }
  return JobProfile(std::move(sizes), std::move(counts));
}

PartitionInstance::PartitionInstance(JobProfile jobs, std::vector<Int> targets)
    : jobs_(std::move(jobs)), targets_(std::move(targets)) {
  if (targets_.empty()) throw InvalidInstanceError("at least one machine is required");
  Int total(0);
  for (std::size_t i = 0; i < targets_.size(); ++i) {
    if (targets_[i] < Int(0))
      throw InvalidInstanceError("targets[" + std::to_string(i) + "] must be nonnegative");
    total += targets_[i];
  }
  if (Int(targets_.size()) > jobs_.total_jobs())
    throw InvalidInstanceError("more machines than jobs (m = " + Int(targets_.size()).str() +
                               ", n = " + jobs_.total_jobs().str() + ")");
  if (total != jobs_.total_size())
    throw InvalidInstanceError("targets sum to " + total.str() + " but jobs sum to " +
                               jobs_.total_size().str());
}

SchedulingInstance::SchedulingInstance(JobProfile jobs, std::vector<Int> speeds)
    : jobs_(std::move(jobs)), speeds_(std::move(speeds)) {
  if (speeds_.empty()) throw InvalidInstanceError("at least one machine is required");
  for (std::size_t i = 0; i < speeds_.size(); ++i)
    if (speeds_[i] <= Int(0))
      throw InvalidInstanceError("speeds[" + std::to_string(i) + "] must be positive");
  if (Int(speeds_.size()) > jobs_.total_jobs())
    throw InvalidInstanceError("more machines than jobs (m = " + Int(speeds_.size()).str() +
                               ", n = " + jobs_.total_jobs().str() + ")");
}

Assignment::Assignment(std::size_t machines, std::size_t sizes, std::vector<Int> cells)
    : machines_(machines), sizes_(sizes), cells_(std::move(cells)) {
  if (cells_.size() != machines_ * sizes_)
    throw InvalidArgumentError("assignment matrix has wrong shape");
  for (const Int& v : cells_)
    if (v < Int(0)) throw InvalidArgumentError("assignment entries must be nonnegative");
}

Int Assignment::load(const JobProfile& jobs, std::size_t machine) const {
  if (jobs.num_sizes() != sizes_)
    throw InvalidArgumentError("assignment has " + std::to_string(sizes_) +
                               " size columns but the profile has " + std::to_string(jobs.num_sizes()));
  Int sum(0);
  for (std::size_t k = 0; k < sizes_; ++k) sum += at(machine, k) * jobs.size_at(k);
  return sum;
}

Int Assignment::job_count(std::size_t machine) const {
  Int sum(0);
  for (std::size_t k = 0; k < sizes_; ++k) sum += at(machine, k);
  return sum;
}

Int Assignment::column_sum(std::size_t size_idx) const {
  Int sum(0);
  for (std::size_t i = 0; i < machines_; ++i) sum += at(i, size_idx);
  return sum;
}

std::vector<std::vector<Int>> Assignment::rows() const {
  std::vector<std::vector<Int>> out(machines_);
  for (std::size_t i = 0; i < machines_; ++i) {
    out[i].reserve(sizes_);
    for (std::size_t k = 0; k < sizes_; ++k) out[i].push_back(at(i, k));
  }
  return out;
}

VerificationReport verify_partition(const PartitionInstance& inst, const Assignment& asg) {
  const JobProfile& jobs = inst.jobs();
  if (asg.num_machines() != inst.num_machines() || asg.num_sizes() != jobs.num_sizes())
    throw InvalidArgumentError("assignment shape does not match the instance");
  VerificationReport report;
  report.pass = true;
  for (std::size_t i = 0; i < asg.num_machines(); ++i) {
    Int l = asg.load(jobs, i);
    report.loads.push_back(l);
    if (l != inst.target(i)) {
      report.pass = false;
      report.violations.push_back("machine " + std::to_string(i) + " has load " + l.str() +
                                  ", target " + inst.target(i).str());
    }
  }
  for (std::size_t k = 0; k < jobs.num_sizes(); ++k) {
    Int c = asg.column_sum(k);
    report.column_sums.push_back(c);
    if (c != jobs.count_at(k)) {
      report.pass = false;
      report.violations.push_back("size " + jobs.size_at(k).str() + " assigned " + c.str() +
                                  " times, expected " + jobs.count_at(k).str());
    }
  }
  return report;
}

Rational verify_makespan(const SchedulingInstance& inst, const Assignment& asg) {
  const JobProfile& jobs = inst.jobs();
  if (asg.num_machines() != inst.num_machines() || asg.num_sizes() != jobs.num_sizes())
    throw InvalidArgumentError("assignment shape does not match the instance");
  for (std::size_t k = 0; k < jobs.num_sizes(); ++k) {
    Int c = asg.column_sum(k);
    if (c != jobs.count_at(k))
      throw InvalidArgumentError("assignment is not complete: size " + jobs.size_at(k).str() +
                                 " assigned " + c.str() + " times, expected " +
                                 jobs.count_at(k).str());
  }
  Rational best(0);
  for (std::size_t i = 0; i < asg.num_machines(); ++i) {
    Rational v(asg.load(jobs, i), inst.speed(i));
    if (v > best) best = v;
  }
  return best;
}

}  // namespace xsched
