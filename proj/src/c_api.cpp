#include "wsl_c.h"

#include <cstring>
#include <stdexcept>
#include <string>

#include "wsl/exponents.hpp"
#include "wsl/quadrature.hpp"
#include "wsl/rational.hpp"
#include "wsl/runner.hpp"

namespace {

thread_local std::string g_last_error;

int set_error(int code, const std::string& msg) {
  g_last_error = msg;
  return code;
}

// Maps thrown exceptions to the stable error-code surface.
template <typename Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    return set_error(WSL_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::domain_error& e) {
    return set_error(WSL_ERR_DOMAIN, e.what());
  } catch (const std::exception& e) {
    return set_error(WSL_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(WSL_ERR_INTERNAL, "unknown error");
  }
}

int status_code(wsl::MemberStatus s) {
  switch (s) {
    case wsl::MemberStatus::Interior: return WSL_INTERIOR;
    case wsl::MemberStatus::Boundary: return WSL_BOUNDARY;
    case wsl::MemberStatus::Outside: return WSL_OUTSIDE;
  }
  return WSL_OUTSIDE;
}

int copy_out(const std::string& s, char* out, size_t out_len) {
  if (!out) return WSL_OK;  // caller opted out
  if (out_len < s.size() + 1)
    return set_error(WSL_ERR_BUFFER_SMALL,
                     "buffer too small: need " +
                         std::to_string(s.size() + 1) + " bytes");
  std::memcpy(out, s.c_str(), s.size() + 1);
  return WSL_OK;
}

std::string joined(const std::vector<std::string>& names) {
  std::string out;
  for (size_t i = 0; i < names.size(); ++i) {
    if (i) out += ",";
    out += names[i];
  }
  return out;
}

int membership_out(const wsl::Membership& m, int* status, char* violated,
                   size_t violated_len) {
  if (!status)
    return set_error(WSL_ERR_INVALID_ARGUMENT, "status must not be NULL");
  *status = status_code(m.status);
  return copy_out(joined(m.violated), violated, violated_len);
}

wsl::Rat parse_or_throw(const char* text, const char* what) {
  if (!text)
    throw std::invalid_argument(std::string(what) + " must not be NULL");
  return wsl::parse_rat(text);
}

}  // namespace

struct wsl_config {
  wsl::ExponentConfig cfg;
};

extern "C" {

const char* wsl_version(void) { return "1.0.0"; }

const char* wsl_last_error(void) { return g_last_error.c_str(); }

wsl_config* wsl_config_new(void) { return new (std::nothrow) wsl_config(); }

void wsl_config_free(wsl_config* cfg) { delete cfg; }

int wsl_config_set(wsl_config* cfg, const char* key, const char* value) {
  return guarded([&]() -> int {
    if (!cfg || !key || !value)
      return set_error(WSL_ERR_INVALID_ARGUMENT, "NULL argument");
    std::string k = key;
    if (k == "dim") {
      try {
        size_t pos = 0;
        int d = std::stoi(value, &pos);
        if (pos != std::strlen(value) || d < 1)
          throw std::invalid_argument("");
        cfg->cfg.dim = d;
      } catch (...) {
        return set_error(WSL_ERR_INVALID_ARGUMENT,
                         "dim must be a positive integer string");
      }
      return WSL_OK;
    }
    wsl::Rat v = wsl::parse_rat(value);
    if (k == "inv_q") cfg->cfg.inv_q = v;
    else if (k == "inv_r") cfg->cfg.inv_r = v;
    else if (k == "inv_qt") cfg->cfg.inv_qt = v;
    else if (k == "inv_rt") cfg->cfg.inv_rt = v;
    else if (k == "gamma") cfg->cfg.gamma = v;
    else if (k == "gamma_t") cfg->cfg.gamma_t = v;
    else if (k == "sigma") cfg->cfg.sigma = v;
    else
      return set_error(WSL_ERR_INVALID_ARGUMENT,
                       "unknown config key '" + k + "'");
    return WSL_OK;
  });
}

int wsl_inhomogeneous_admissible(const wsl_config* cfg, int* status,
                                 char* violated, size_t violated_len) {
  return guarded([&]() -> int {
    if (!cfg) return set_error(WSL_ERR_INVALID_ARGUMENT, "cfg is NULL");
    auto adm = wsl::inhomogeneous_admissible(cfg->cfg);
    return membership_out(adm.membership, status, violated, violated_len);
  });
}

int wsl_necessary_conditions(const wsl_config* cfg, int* status,
                             char* violated, size_t violated_len) {
  return guarded([&]() -> int {
    if (!cfg) return set_error(WSL_ERR_INVALID_ARGUMENT, "cfg is NULL");
    auto m = wsl::necessary_conditions(cfg->cfg);
    return membership_out(m, status, violated, violated_len);
  });
}

int wsl_ad_membership(const char* inv_q, const char* inv_r, const char* gamma,
                      const char* sigma, int* status_full,
                      int* status_reduced) {
  return guarded([&]() -> int {
    if (!status_full)
      return set_error(WSL_ERR_INVALID_ARGUMENT, "status_full is NULL");
    auto m = wsl::ad_membership(
        parse_or_throw(inv_q, "inv_q"), parse_or_throw(inv_r, "inv_r"),
        parse_or_throw(gamma, "gamma"), parse_or_throw(sigma, "sigma"));
    *status_full = status_code(m.full.status);
    if (status_reduced)
      *status_reduced =
          m.reduced ? status_code(m.reduced->status) : WSL_OUTSIDE;
    return WSL_OK;
  });
}

int wsl_ac_membership(const char* inv_q, const char* inv_r, const char* gamma,
                      const char* sigma, int* status) {
  return guarded([&]() -> int {
    if (!status)
      return set_error(WSL_ERR_INVALID_ARGUMENT, "status is NULL");
    auto m = wsl::ac_membership(
        parse_or_throw(inv_q, "inv_q"), parse_or_throw(inv_r, "inv_r"),
        parse_or_throw(gamma, "gamma"), parse_or_throw(sigma, "sigma"));
    *status = status_code(m.status);
    return WSL_OK;
  });
}

int wsl_beta_exponent(const char* inv_a, const char* inv_b, const char* inv_at,
                      const char* inv_bt, const char* gamma,
                      const char* gamma_t, char* out, size_t out_len) {
  return guarded([&]() -> int {
    if (!out) return set_error(WSL_ERR_INVALID_ARGUMENT, "out is NULL");
    wsl::Rat beta = wsl::beta_exponent(
        parse_or_throw(inv_a, "inv_a"), parse_or_throw(inv_b, "inv_b"),
        parse_or_throw(inv_at, "inv_at"), parse_or_throw(inv_bt, "inv_bt"),
        parse_or_throw(gamma, "gamma"), parse_or_throw(gamma_t, "gamma_t"));
    return copy_out(wsl::rat_str(beta), out, out_len);
  });
}

int wsl_wellposedness_exponents(const char* alpha, const char* delta,
                                const char* gamma0, const char* gammat0,
                                char* out, size_t out_len) {
  return guarded([&]() -> int {
    if (!out) return set_error(WSL_ERR_INVALID_ARGUMENT, "out is NULL");
    auto wp = wsl::wellposedness_exponents(
        parse_or_throw(alpha, "alpha"), parse_or_throw(delta, "delta"),
        parse_or_throw(gamma0, "gamma0"), parse_or_throw(gammat0, "gammat0"));
    std::string s = wsl::rat_str(wp.inv_q0) + "," + wsl::rat_str(wp.inv_r0) +
                    "," + wsl::rat_str(wp.inv_qt0) + "," +
                    wsl::rat_str(wp.inv_rt0);
    return copy_out(s, out, out_len);
  });
}

int wsl_run(const char* subcommand, const char* config_path,
            const char* out_dir, int jobs, unsigned long long seed) {
  return guarded([&]() -> int {
    if (!subcommand || !out_dir)
      return set_error(WSL_ERR_INVALID_ARGUMENT,
                       "subcommand and out_dir must not be NULL");
    wsl::RunOptions opts;
    if (config_path) opts.config_path = config_path;
    opts.out_dir = out_dir;
    opts.jobs = jobs;
    opts.seed = seed;
    std::string diagnostics;
    int rc = wsl::run_subcommand(subcommand, opts, diagnostics);
    if (rc == 1) return set_error(WSL_ERR_CHECK_FAILED, diagnostics);
    if (rc != 0) return set_error(WSL_ERR_INVALID_ARGUMENT, diagnostics);
    g_last_error = diagnostics;
    return WSL_OK;
  });
}

}  // extern "C"
