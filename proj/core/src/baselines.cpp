#include "hsdp/baselines.hpp"

#include <cstdio>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "hsdp/errors.hpp"
#include "hsdp/mapda.hpp"

namespace hsdp {

namespace {

BaselineResult not_applicable(std::string scheme, long long users, long long t,
                              std::string reason) {
  BaselineResult result;
  result.scheme = std::move(scheme);
  result.applicable = false;
  result.reason = std::move(reason);
  if (users > 0) result.memory_ratio = Rational(t, users);
  return result;
}

BaselineResult make_result(std::string scheme, long long users, long long t,
                           BigInt subpacketization, long long sum_dof) {
  BaselineResult result;
  result.scheme = std::move(scheme);
  result.applicable = true;
  result.subpacketization = std::move(subpacketization);
  result.subpacketization_approx = to_double(result.subpacketization);
  result.sum_dof = sum_dof;
  result.memory_ratio = Rational(t, users);
  return result;
}

bool in_range(long long users, long long t, long long antennas) {
  return users >= 1 && antennas >= 1 && t >= 1 && t <= users;
}

}  // namespace

BaselineResult ywcc1(long long users, long long t, long long antennas,
                     long long m) {
  if (!in_range(users, t, antennas))
    return not_applicable("YWCC1", users, t, "t in [K]");
  if (t + antennas > users)
    return not_applicable("YWCC1", users, t, "t + L <= K");
  if (m == antennas) {
    if (users % antennas || t % antennas)
      return not_applicable("YWCC1", users, t, "K/L, t/L in Z+");
    return make_result("YWCC1", users, t, binomial(users / antennas, t / antennas),
                       t + antennas);
  }
  if (m < 1 || m > antennas)
    return not_applicable("YWCC1", users, t, "K/m, t/m in Z+, m < L");
  if (users % m || t % m)
    return not_applicable("YWCC1", users, t, "K/m, t/m in Z+, m < L");
  const long long d = std::gcd(m, antennas - m);
  // (t+L)/gcd(m, L-m) * C(K/m, t/m); the division is exact for every
  // configuration the sweeps emit, and checked here otherwise.
  BigInt f = BigInt(t + antennas) * binomial(users / m, t / m);
  if (f % d != 0)
    return not_applicable("YWCC1", users, t, "(t+L)/gcd(m, L-m) in Z+");
  return make_result("YWCC1", users, t, f / d, t + antennas);
}

BaselineResult ywcc1_best(long long users, long long t, long long antennas) {
  BaselineResult best = not_applicable("YWCC1", users, t, "no applicable m in [1, L]");
  for (long long m = 1; m <= antennas; ++m) {
    BaselineResult candidate = ywcc1(users, t, antennas, m);
    if (!candidate.applicable) continue;
    if (!best.applicable || candidate.subpacketization < best.subpacketization)
      best = candidate;
  }
  return best;
}

BaselineResult ywcc2(long long users, long long t, long long antennas) {
  if (!in_range(users, t, antennas))
    return not_applicable("YWCC2", users, t, "t in [K]");
  if (t + antennas < users)
    return not_applicable("YWCC2", users, t, "t + L >= K");
  return make_result("YWCC2", users, t, users, t + antennas);
}

BaselineResult npr(long long users, long long t, long long antennas) {
  if (!in_range(users, t, antennas))
    return not_applicable("NPR", users, t, "t in [K]");
  if (t + antennas > users)
    return not_applicable("NPR", users, t, "t + L <= K");
  const long long beta = std::gcd(std::gcd(users, t), antennas);
  // beta divides K, t and L, hence also t+L: both quotients are integral.
  BigInt f = BigInt((t + antennas) / beta) *
             binomial(users / beta, (t + antennas) / beta);
  return make_result("NPR", users, t, f, t + antennas);
}

BaselineResult wcc(long long users, long long t, long long antennas) {
  if (!in_range(users, t, antennas))
    return not_applicable("WCC", users, t, "t in [K]");
  if (t + antennas > users)
    return not_applicable("WCC", users, t, "t + L <= K");
  const long long g = 2 * antennas;
  if ((users - t) % 2 != 0)
    return make_result("WCC", users, t, BigInt(2 * antennas) * users, g);
  if (users % antennas != 0)
    return make_result("WCC", users, t, BigInt(antennas) * users, g);
  return make_result("WCC", users, t, users, g);
}

BaselineResult ctwwl(long long users, long long t, long long antennas) {
  if (!in_range(users, t, antennas))
    return not_applicable("CTWWL", users, t, "t in [K]");
  if (t + antennas > users)
    return not_applicable("CTWWL", users, t, "t + L <= K");
  const long long beta = std::gcd(std::gcd(users, t), antennas);
  const long long modulus = users - t + antennas;
  const long long y = (t + antennas) % modulus;
  const long long whole = (t + antennas) / modulus;
  long long g = 0;
  if (y >= 2 * antennas) {
    g = 2 * antennas * whole + 2 * antennas;
  } else if (y >= antennas) {
    g = 2 * antennas * whole + y;
  } else {
    return not_applicable("CTWWL", users, t, "L <= <t+L>_{K-t+L}");
  }
  // beta divides g (it divides 2L and y) and K, so F = gK/beta^2 is whole.
  BigInt f = BigInt(g) * users / (BigInt(beta) * beta);
  return make_result("CTWWL", users, t, f, g);
}

namespace {

SweepRow row_from_baseline(const BaselineResult& b, long long users,
                           long long antennas, long long t) {
  SweepRow row;
  row.scheme = b.scheme;
  row.users = users;
  row.antennas = antennas;
  row.t = t;
  row.memory_ratio = Rational(t, users);
  row.subpacketization = b.subpacketization;
  row.subpacketization_approx = b.subpacketization_approx;
  row.sum_dof = b.sum_dof;
  row.applicable = b.applicable;
  row.reason = b.reason;
  return row;
}

}  // namespace

std::vector<SweepRow> compare_sweep(long long users, long long antennas,
                                    const std::vector<SweepPoint>& points) {
  std::vector<SweepRow> rows;
  for (const SweepPoint& point : points) {
    long long t = 0;
    if (const DesignPoint* ours = std::get_if<DesignPoint>(&point)) {
      if (ours->modulus != users)
        throw std::invalid_argument("design point modulus " +
                                    std::to_string(ours->modulus) +
                                    " does not match sweep K = " +
                                    std::to_string(users));
      if (ours->antennas != antennas)
        throw std::invalid_argument("design point antenna count mismatch");
      // End-to-end route, not the formulas: construct, verify, lift, verify.
      Hsdp packing = construct_hsdp(ours->construction());
      if (!verify_hsdp(packing).pass())
        throw std::logic_error("sweep point failed packing verification");
      Mapda array = build_mapda(packing);
      if (!verify_mapda(array).pass())
        throw std::logic_error("sweep point failed array verification");
      SchemeParams params = scheme_params(array);
      if (params.memory_ratio != ours->memory_ratio() ||
          params.sum_dof != Rational(ours->block_size()) ||
          params.subpacketization != users)
        throw std::logic_error("pipeline parameters disagree with the point");
      t = params.stars;  // K(Z/F) with F = K

      SweepRow row;
      row.scheme = "HSDP";
      row.users = users;
      row.antennas = antennas;
      row.t = t;
      row.memory_ratio = params.memory_ratio;
      row.subpacketization = params.subpacketization;
      row.subpacketization_approx = static_cast<double>(params.subpacketization);
      row.sum_dof = ours->block_size();
      row.applicable = true;
      rows.push_back(std::move(row));
    } else {
      t = std::get<long long>(point);
    }
    rows.push_back(row_from_baseline(ywcc1_best(users, t, antennas), users, antennas, t));
    rows.push_back(row_from_baseline(ywcc2(users, t, antennas), users, antennas, t));
    rows.push_back(row_from_baseline(npr(users, t, antennas), users, antennas, t));
    rows.push_back(row_from_baseline(wcc(users, t, antennas), users, antennas, t));
    rows.push_back(row_from_baseline(ctwwl(users, t, antennas), users, antennas, t));
  }
  return rows;
}

namespace {

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

}  // namespace

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "scheme,K,L,t,M_over_N,F_exact,F_float,g,applicable,reason\n";
  for (const SweepRow& row : rows) {
    out << csv_quote(row.scheme) << ',' << row.users << ',' << row.antennas
        << ',' << row.t << ',' << to_string(row.memory_ratio) << ','
        << row.subpacketization.str() << ',';
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", row.subpacketization_approx);
    out << buf << ',' << row.sum_dof << ',' << (row.applicable ? "yes" : "no")
        << ',' << csv_quote(row.reason) << '\n';
  }
}

}  // namespace hsdp
