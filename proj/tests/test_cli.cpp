#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string(MWSIM_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

fs::path write_config(const std::string& tag, const std::string& body) {
  const fs::path dir = fs::temp_directory_path() / "mwsim_cli_test";
  fs::create_directories(dir);
  const fs::path p = dir / (tag + ".ini");
  std::ofstream out(p);
  out << body;
  return p;
}

const std::string kSmall =
    "[geometry]\n"
    "grating_count = 40\n"
    "grating_center_um = -30\n"
    "[detector]\n"
    "points = 151\n"
    "halfwidth_mm = 2\n"
    "tail_guard_fraction = 0.005\n";

}  // namespace

TEST_CASE("cli: run succeeds and writes the profile artifacts") {
  const fs::path cfg = write_config("ok", kSmall);
  const fs::path out = fs::temp_directory_path() / "mwsim_cli_test" / "out_run";
  fs::remove_all(out);
  const int rc = run_cli("run --config " + cfg.string() +
                         " --assumption classical --out " + out.string());
  CHECK(rc == 0);
  CHECK(fs::exists(out / "profile_classical.csv"));
  CHECK(fs::exists(out / "profile_classical.svg"));
}

TEST_CASE("cli: compare emits the three assumptions side by side") {
  const fs::path cfg = write_config("cmp", kSmall);
  const fs::path out = fs::temp_directory_path() / "mwsim_cli_test" / "out_cmp";
  fs::remove_all(out);
  const int rc = run_cli("compare --config " + cfg.string() + " --out " +
                         out.string());
  CHECK(rc == 0);
  for (const char* name : {"profile_usual.csv", "profile_classical.csv",
                           "profile_alternative.csv", "compare.csv"})
    CHECK(fs::exists(out / name));
}

TEST_CASE("cli: oracle cross-check passes on the small geometry") {
  const fs::path cfg = write_config("orc", kSmall);
  const fs::path out = fs::temp_directory_path() / "mwsim_cli_test" / "out_orc";
  const int rc =
      run_cli("oracle --config " + cfg.string() + " --points 7 --out " +
              out.string());
  CHECK(rc == 0);
  CHECK(fs::exists(out / "oracle.csv"));
}

TEST_CASE("cli: configuration faults exit with code 2") {
  const fs::path bad1 = write_config("bad1", "[geometry]\nslit_a_width_um = -1\n");
  CHECK(run_cli("run --config " + bad1.string()) == 2);
  const fs::path bad2 = write_config("bad2", "[nope]\nkey = 1\n");
  CHECK(run_cli("run --config " + bad2.string()) == 2);
  CHECK(run_cli("run --assumption sideways") == 2);
  CHECK(run_cli("frobnicate") == 2);
}

TEST_CASE("cli: numerical-tolerance faults exit with code 3") {
  // spec-default tail guard (1e-6) cannot hold for the union mask, so the
  // alternative-assumption median computation refuses to run
  std::string guarded = kSmall;
  const auto pos = guarded.find("tail_guard_fraction = 0.005\n");
  guarded.erase(pos, std::string("tail_guard_fraction = 0.005\n").size());
  const fs::path cfg = write_config("guard", guarded);
  const fs::path out = fs::temp_directory_path() / "mwsim_cli_test" / "out_guard";
  const int rc = run_cli("run --config " + cfg.string() +
                         " --assumption alternative --out " + out.string());
  CHECK(rc == 3);
}

TEST_CASE("cli: unwritable output exits with code 4") {
  const fs::path cfg = write_config("io", kSmall);
  const fs::path blocker =
      fs::temp_directory_path() / "mwsim_cli_test" / "not_a_dir";
  std::ofstream(blocker) << "file in the way";
  const int rc = run_cli("run --config " + cfg.string() +
                         " --assumption classical --out " +
                         (blocker / "sub").string());
  CHECK(rc == 4);
}
