#include "detsched/generators.hpp"

#include <limits>
#include <string>

#include "detsched/error.hpp"

namespace detsched {

namespace {

std::uint64_t integral_bound(const Rational& value, const char* name) {
  if (value.sign() < 0 || !value.is_integer()) {
    throw Error(ErrorKind::BadSpec, std::string(name) + " must be a non-negative integer, got " + value.str());
  }
  const mpz_class& num = value.raw().get_num();
  if (!mpz_fits_ulong_p(num.get_mpz_t())) throw Error(ErrorKind::BadSpec, std::string(name) + " is too large");
  return num.get_ui();
}

void require_beta(const FamilySpec& spec) {
  if (spec.beta.sign() <= 0) throw Error(ErrorKind::BadSpec, "beta must be > 0, got " + spec.beta.str());
}

void require_family(const FamilySpec& spec, Family expected) {
  if (spec.family != expected) {
    throw Error(ErrorKind::BadSpec, "spec names family " + std::string(to_string(spec.family)) + ", expected " +
                                        std::string(to_string(expected)));
  }
}

Rational scale_or(const FamilySpec& spec, Rational fallback) {
  Rational scale = spec.scale.value_or(std::move(fallback));
  if (scale.sign() <= 0) throw Error(ErrorKind::BadSpec, "scale B must be > 0, got " + scale.str());
  return scale;
}

Job make_job(std::uint64_t id, Rational alpha, Rational release) {
  return Job{JobId{id}, std::move(alpha), std::move(release)};
}

Rational as_rational(std::uint64_t value) {
  mpz_class z;
  mpz_set_ui(z.get_mpz_t(), value);
  return Rational(mpq_class(z));
}

}  // namespace

SeededStream::SeededStream(std::uint64_t seed) : engine_(seed) {}

std::uint64_t SeededStream::uniform(std::uint64_t bound) {
  if (bound == std::numeric_limits<std::uint64_t>::max()) return engine_();
  // Rejection sampling keeps the draw unbiased and identical on every
  // standard library (std::uniform_int_distribution is not portable).
  const std::uint64_t range = bound + 1;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t draw = engine_();
  while (draw >= limit) draw = engine_();
  return draw % range;
}

bool SeededStream::coin() { return (engine_() >> 63) != 0; }

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::string_view to_string(Family family) {
  switch (family) {
    case Family::Random: return "random";
    case Family::TwoRelease: return "two-release";
    case Family::NonInterferingAdv: return "non-interfering-adv";
    case Family::NonIdlingAdv: return "non-idling-adv";
    case Family::EctfAdv: return "ectf-adv";
  }
  return "unknown";
}

Family parse_family(std::string_view name) {
  std::string key;
  for (char c : name) {
    if (c == '_' || c == '-') continue;
    key.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c);
  }
  if (key == "random") return Family::Random;
  if (key == "tworelease") return Family::TwoRelease;
  if (key == "noninterferingadv") return Family::NonInterferingAdv;
  if (key == "nonidlingadv" || key == "nongapadv") return Family::NonIdlingAdv;
  if (key == "ectfadv") return Family::EctfAdv;
  throw Error(ErrorKind::BadSpec, "unknown family \"" + std::string(name) + "\"");
}

std::size_t job_count(const FamilySpec& spec) {
  switch (spec.family) {
    case Family::NonIdlingAdv: return spec.size + std::size_t{1};
    case Family::EctfAdv: return 2 * std::size_t{spec.size};
    default: return spec.size;
  }
}

Instance generate(const FamilySpec& spec) {
  switch (spec.family) {
    case Family::Random: return gen_random(spec);
    case Family::TwoRelease: return gen_two_release(spec);
    case Family::NonInterferingAdv: return gen_noninterfering_adv(spec);
    case Family::NonIdlingAdv: return gen_nonidling_adv(spec);
    case Family::EctfAdv: return gen_ectf_adv(spec);
  }
  throw Error(ErrorKind::BadSpec, "unknown family");
}

Instance gen_random(const FamilySpec& spec) {
  require_family(spec, Family::Random);
  require_beta(spec);
  if (spec.size < 1) throw Error(ErrorKind::BadSpec, "n must be >= 1");
  const std::uint64_t alpha_max = integral_bound(spec.alpha_max, "alpha_max");
  const std::uint64_t r_max = integral_bound(spec.r_max, "r_max");
  SeededStream stream(spec.seed);
  Instance instance{spec.beta, {}};
  for (std::uint32_t j = 1; j <= spec.size; ++j) {
    Rational alpha = as_rational(stream.uniform(alpha_max));
    Rational release = as_rational(stream.uniform(r_max));
    instance.jobs.push_back(make_job(j, std::move(alpha), std::move(release)));
  }
  return instance;
}

Instance gen_two_release(const FamilySpec& spec) {
  require_family(spec, Family::TwoRelease);
  require_beta(spec);
  if (spec.size < 2) throw Error(ErrorKind::BadSpec, "two release times need n >= 2");
  const std::uint64_t alpha_max = integral_bound(spec.alpha_max, "alpha_max");
  const std::uint64_t r_max = integral_bound(spec.r_max, "r_max");
  if (r_max == 0) throw Error(ErrorKind::BadSpec, "two release times need r_max > 0");
  SeededStream stream(spec.seed);
  Instance instance{spec.beta, {}};
  for (std::uint32_t j = 1; j <= spec.size; ++j) {
    instance.jobs.push_back(make_job(j, as_rational(stream.uniform(alpha_max)), Rational(0)));
  }
  const Rational late = as_rational(r_max);
  for (;;) {
    std::uint32_t late_count = 0;
    for (Job& job : instance.jobs) {
      const bool is_late = stream.coin();
      job.release = is_late ? late : Rational(0);
      late_count += is_late ? 1 : 0;
    }
    if (late_count > 0 && late_count < spec.size) break;
  }
  return instance;
}

Instance gen_noninterfering_adv(const FamilySpec& spec) {
  require_family(spec, Family::NonInterferingAdv);
  require_beta(spec);
  if (spec.size < 1) throw Error(ErrorKind::BadSpec, "n must be >= 1");
  const Rational n(static_cast<std::int64_t>(spec.size));
  const Rational scale = scale_or(spec, n * n);
  if (scale < n) throw Error(ErrorKind::BadSpec, "family needs B >= n, got B = " + scale.str());
  const Rational growth = Rational(1) + spec.beta;
  Instance instance{spec.beta, {}};
  Rational release;
  Rational weight(1);
  for (std::uint32_t j = 1; j <= spec.size; ++j) {
    release += weight * scale;
    weight *= growth;
    instance.jobs.push_back(make_job(j, scale + n - Rational(static_cast<std::int64_t>(j)), release));
  }
  return instance;
}

Instance gen_nonidling_adv(const FamilySpec& spec) {
  require_family(spec, Family::NonIdlingAdv);
  require_beta(spec);
  if (spec.size < 1) throw Error(ErrorKind::BadSpec, "k must be >= 1");
  const Rational scale = scale_or(spec, (Rational(1) + spec.beta).pow(spec.size + 1));
  Instance instance{spec.beta, {}};
  instance.jobs.push_back(make_job(1, scale, Rational(0)));
  for (std::uint32_t j = 0; j < spec.size; ++j) {
    instance.jobs.push_back(make_job(j + 2, Rational(0), Rational(1)));
  }
  return instance;
}

Instance gen_ectf_adv(const FamilySpec& spec) {
  require_family(spec, Family::EctfAdv);
  require_beta(spec);
  if (spec.size < 1) throw Error(ErrorKind::BadSpec, "k must be >= 1");
  const Rational scale = scale_or(spec, Rational(1));
  const Rational growth = Rational(1) + spec.beta;
  Instance instance{spec.beta, {}};
  for (std::uint32_t j = 1; j <= spec.size; ++j) {
    instance.jobs.push_back(make_job(j, growth * scale, Rational(0)));
  }
  Rational release;
  Rational weight(1);
  for (std::uint32_t j = 1; j <= spec.size; ++j) {
    release += weight * scale;
    weight *= growth;
    instance.jobs.push_back(make_job(spec.size + j, Rational(0), release));
  }
  return instance;
}

Instance reduce_instance(const Instance& instance, const Schedule& ni_schedule) {
  require_permutation(instance, ni_schedule.order);
  const Rational growth = instance.growth();
  Instance reduced = instance;
  // Gap-free start of the current position: sum_{i<k} (1+b)^(k-1-i) alpha_i.
  Rational packed_start;
  for (JobId id : ni_schedule.order) {
    Job& job = reduced.jobs[reduced.index_of(id)];
    job.release = min(job.release, packed_start);
    packed_start = completion_at(growth, packed_start, job.alpha);
  }
  return reduced;
}

}  // namespace detsched
