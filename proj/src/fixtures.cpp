#include "hinwalk/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <string>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "hinwalk/error.hpp"
#include "hinwalk/rng.hpp"

namespace hinwalk::fixtures {

namespace {

constexpr int kUsers = 943;
constexpr int kMovieRows = 1682;
constexpr int kRatedMovies = 1664;
constexpr int kGenres = 19;  // flag 0 is "unknown"
constexpr int kTypeEdges = 2863;
constexpr int kYears = 72;
constexpr int kRatings = 99965;
constexpr int kLikes = 82495;  // ratings >= 3
constexpr int kZips = 795;
constexpr int kClusters = 24;

const char* kOccupations[21] = {
    "administrator", "artist",    "doctor",    "educator",  "engineer", "entertainment",
    "executive",     "healthcare", "homemaker", "lawyer",    "librarian", "marketing",
    "none",          "other",     "programmer", "retired",   "salesman",  "scientist",
    "student",       "technician", "writer"};

const char* kGenreNames[kGenres] = {
    "unknown", "Action", "Adventure", "Animation", "Children's", "Comedy", "Crime",
    "Documentary", "Drama", "Fantasy", "Film-Noir", "Horror", "Musical", "Mystery",
    "Romance", "Sci-Fi", "Thriller", "War", "Western"};

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write file '" + p.string() + "'");
  return out;
}

// Cumulative-weight sampler.
class WeightedPicker {
 public:
  explicit WeightedPicker(std::vector<double> weights) : cumulative_(std::move(weights)) {
    for (std::size_t i = 1; i < cumulative_.size(); ++i) cumulative_[i] += cumulative_[i - 1];
  }
  bool empty() const { return cumulative_.empty() || cumulative_.back() <= 0.0; }
  std::size_t pick(Rng& rng) const {
    const double u = uniform01(rng) * cumulative_.back();
    return std::upper_bound(cumulative_.begin(), cumulative_.end(), u) - cumulative_.begin();
  }

 private:
  std::vector<double> cumulative_;
};

std::uint64_t pair_key(int user, int movie) {
  return (static_cast<std::uint64_t>(user) << 32) | static_cast<std::uint32_t>(movie);
}

}  // namespace

void write_ml100k(const std::filesystem::path& directory, std::uint64_t seed) {
  std::filesystem::create_directories(directory);
  Rng rng(derive_seed(seed, "ml100k"));

  // --- movies: genre flags and release year ---
  std::vector<std::vector<int>> genres(kMovieRows + 1);
  for (int m = 1; m <= kMovieRows; ++m) {
    int primary;
    if (m <= kGenres) {
      primary = m - 1;  // every flag appears among rated movies
    } else {
      primary = 1 + static_cast<int>(bounded(rng, kGenres - 1));  // "unknown" stays rare
    }
    genres[m] = {primary};
  }
  {
    // Extra flags on rated movies bring the total to the target exactly:
    // a shuffled prefix gets three flags, the next slice two.
    std::vector<int> rated(kRatedMovies);
    std::iota(rated.begin(), rated.end(), 1);
    shuffle_in_place(rated, rng);
    int extra = kTypeEdges - kRatedMovies;  // 1199
    const int triples = 100;
    auto add_flag = [&](int m) {
      for (;;) {
        const int g = 1 + static_cast<int>(bounded(rng, kGenres - 1));
        if (std::find(genres[m].begin(), genres[m].end(), g) == genres[m].end()) {
          genres[m].push_back(g);
          return;
        }
      }
    };
    for (int i = 0; extra > 0; ++i) {
      const int m = rated[i];
      add_flag(m);
      --extra;
      if (i < triples && extra > 0) {
        add_flag(m);
        --extra;
      }
    }
  }
  std::vector<int> year(kMovieRows + 1, 1990);
  for (int m = 1; m <= kRatedMovies; ++m) {
    if (m <= kYears) {
      year[m] = 1922 + (m - 1);
    } else {
      const double z = uniform01(rng);
      year[m] = 1993 - static_cast<int>(std::floor(36.0 * z * z));
    }
  }

  // --- popularity: strong Zipf-like skew over rated movies; the popular
  // core carries most of the predictive signal, as in real rating data ---
  std::vector<int> pop_rank(kRatedMovies);
  std::iota(pop_rank.begin(), pop_rank.end(), 1);
  shuffle_in_place(pop_rank, rng);
  std::vector<double> movie_weight(kRatedMovies + 1, 0.0);
  for (int r = 0; r < kRatedMovies; ++r) {
    movie_weight[pop_rank[r]] = 1.0 / std::pow(static_cast<double>(r + 8), 1.1);
  }
  std::vector<double> global_w(kRatedMovies);
  for (int m = 1; m <= kRatedMovies; ++m) global_w[m - 1] = movie_weight[m];
  const WeightedPicker global_picker(global_w);

  // Per-genre popularity-weighted pools.
  std::vector<std::vector<int>> genre_movies(kGenres);
  for (int m = 1; m <= kRatedMovies; ++m) {
    for (int g : genres[m]) genre_movies[g].push_back(m);
  }
  std::vector<WeightedPicker> genre_picker;
  genre_picker.reserve(kGenres);
  for (int g = 0; g < kGenres; ++g) {
    std::vector<double> w(genre_movies[g].size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = movie_weight[genre_movies[g][i]];
    genre_picker.emplace_back(std::move(w));
  }

  // --- users: taste cluster, attributes; zip codes independent of taste ---
  std::vector<int> cluster(kUsers + 1);
  for (int u = 1; u <= kUsers; ++u) cluster[u] = static_cast<int>(bounded(rng, kClusters));
  struct ClusterTaste {
    int genre[3];
    double weight[3] = {0.55, 0.30, 0.15};
  };
  std::vector<ClusterTaste> tastes(kClusters);
  for (int c = 0; c < kClusters; ++c) {
    tastes[c].genre[0] = 1 + c % (kGenres - 1);
    tastes[c].genre[1] = 1 + (c + 5) % (kGenres - 1);
    tastes[c].genre[2] = 1 + (c * 7 + 3) % (kGenres - 1);
  }

  std::vector<int> age(kUsers + 1), occ(kUsers + 1);
  std::vector<char> gender(kUsers + 1);
  for (int u = 1; u <= kUsers; ++u) {
    age[u] = (u <= 61) ? 18 + (u - 1) : 18 + static_cast<int>(bounded(rng, 61));
    occ[u] = (u <= 21) ? u - 1 : static_cast<int>(bounded(rng, 21));
    gender[u] = (u == 1) ? 'M' : (u == 2) ? 'F' : (uniform01(rng) < 0.71 ? 'M' : 'F');
  }
  // Zip plan: 647 singles plus 148 two-user zips = 795 zips, 943 users.
  // Assignment is independent of taste clusters.
  std::vector<int> zip_of_user(kUsers + 1);
  {
    std::vector<int> slots;
    slots.reserve(kUsers);
    int zip = 1;
    auto push_zip = [&](int count, int size) {
      for (int i = 0; i < count; ++i, ++zip) {
        for (int s = 0; s < size; ++s) slots.push_back(zip);
      }
    };
    push_zip(647, 1);
    push_zip(148, 2);
    std::vector<int> users_perm(kUsers);
    std::iota(users_perm.begin(), users_perm.end(), 1);
    shuffle_in_place(users_perm, rng);
    for (int i = 0; i < kUsers; ++i) zip_of_user[users_perm[i]] = slots[i];
  }

  // --- per-user rating quotas, summing exactly to the target ---
  std::vector<int> quota(kUsers + 1, 0);
  {
    long long total = 0;
    for (int u = 1; u <= kUsers; ++u) {
      const double z = uniform01(rng);
      quota[u] = 20 + static_cast<int>(std::floor(260.0 * z * z));
      total += quota[u];
    }
    int u = 1;
    while (total > kRatings) {
      if (quota[u] > 20) {
        --quota[u];
        --total;
      }
      u = (u % kUsers) + 1;
    }
    while (total < kRatings) {
      if (quota[u] < 1400) {
        ++quota[u];
        ++total;
      }
      u = (u % kUsers) + 1;
    }
  }

  // --- ratings ---
  struct RatingRow {
    int user, movie, value;
  };
  std::vector<RatingRow> rows;
  rows.reserve(kRatings);
  std::unordered_set<std::uint64_t> used;
  used.reserve(kRatings * 2);
  std::vector<int> count(kUsers + 1, 0);

  auto off_taste_value = [&](Rng& r) {
    const double z = uniform01(r);
    if (z < 0.15) return 1;
    if (z < 0.40) return 2;
    if (z < 0.75) return 3;
    if (z < 0.90) return 4;
    return 5;
  };
  auto on_taste_value = [&](Rng& r) {
    const double z = uniform01(r);
    if (z < 0.10) return 3;
    if (z < 0.60) return 4;
    return 5;
  };

  // Coverage pass: every rated movie gets one rating from a random user.
  for (int m = 1; m <= kRatedMovies; ++m) {
    const int u = 1 + static_cast<int>(bounded(rng, kUsers));
    used.insert(pair_key(u, m));
    rows.push_back({u, m, off_taste_value(rng)});
    ++count[u];
  }

  // Preference pass: fill each user's quota.
  for (int u = 1; u <= kUsers; ++u) {
    const ClusterTaste& taste = tastes[cluster[u]];
    int guard = 0;
    while (count[u] < quota[u]) {
      int movie = -1;
      if (uniform01(rng) < 0.30) {
        const double z = uniform01(rng);
        const int g = taste.genre[z < taste.weight[0] ? 0
                                  : z < taste.weight[0] + taste.weight[1] ? 1 : 2];
        if (!genre_picker[g].empty()) {
          movie = genre_movies[g][genre_picker[g].pick(rng)];
        }
      }
      int value;
      if (movie >= 0) {
        value = on_taste_value(rng);
      } else {
        movie = 1 + static_cast<int>(global_picker.pick(rng));
        value = off_taste_value(rng);
      }
      if (!used.insert(pair_key(u, movie)).second) {
        if (++guard > 400) {
          // Saturated taste pool: take the first unseen movie.
          for (int m = 1; m <= kRatedMovies && count[u] < quota[u]; ++m) {
            if (used.insert(pair_key(u, m)).second) {
              rows.push_back({u, m, off_taste_value(rng)});
              ++count[u];
            }
          }
          break;
        }
        continue;
      }
      rows.push_back({u, movie, value});
      ++count[u];
      guard = 0;
    }
  }

  // Exact likes count: flip ratings across the 2/3 boundary as needed.
  {
    long long likes = 0;
    for (const RatingRow& r : rows) likes += (r.value >= 3) ? 1 : 0;
    std::vector<std::uint32_t> order(rows.size());
    std::iota(order.begin(), order.end(), 0u);
    shuffle_in_place(order, rng);
    for (std::uint32_t idx : order) {
      if (likes == kLikes) break;
      RatingRow& r = rows[idx];
      if (likes > kLikes && r.value == 3) {
        r.value = 2;
        --likes;
      } else if (likes < kLikes && r.value == 2) {
        r.value = 3;
        ++likes;
      }
    }
    if (likes != kLikes) throw Error("ml100k fixture: could not balance likes");
  }

  // --- write files ---
  {
    auto out = open_out(directory / "u.data");
    long long t = 874000000;
    std::sort(rows.begin(), rows.end(), [](const RatingRow& a, const RatingRow& b) {
      return a.user != b.user ? a.user < b.user : a.movie < b.movie;
    });
    for (const RatingRow& r : rows) {
      out << r.user << '\t' << r.movie << '\t' << r.value << '\t' << t << '\n';
      t += 7;
    }
  }
  {
    auto out = open_out(directory / "u.item");
    char date[16];
    for (int m = 1; m <= kMovieRows; ++m) {
      std::snprintf(date, sizeof(date), "01-Jan-%04d", year[m]);
      out << m << '|' << "Movie " << m << " (" << year[m] << ")" << '|' << date << "||";
      for (int g = 0; g < kGenres; ++g) {
        const bool set = std::find(genres[m].begin(), genres[m].end(), g) != genres[m].end();
        out << '|' << (set ? '1' : '0');
      }
      out << '\n';
    }
  }
  {
    auto out = open_out(directory / "u.user");
    char zip[8];
    for (int u = 1; u <= kUsers; ++u) {
      std::snprintf(zip, sizeof(zip), "%05d", zip_of_user[u]);
      out << u << '|' << age[u] << '|' << gender[u] << '|' << kOccupations[occ[u]] << '|' << zip
          << '\n';
    }
  }
  {
    auto out = open_out(directory / "u.genre");
    for (int g = 0; g < kGenres; ++g) out << kGenreNames[g] << '|' << g << '\n';
  }
  {
    auto out = open_out(directory / "u.occupation");
    for (const char* o : kOccupations) out << o << '\n';
  }
}

void write_dm(const std::filesystem::path& directory, std::uint64_t seed) {
  std::filesystem::create_directories(directory);
  Rng rng(derive_seed(seed, "dm"));

  constexpr int kDmUsers = 150;
  constexpr int kDmMovies = 350;
  constexpr int kDmActors = 120;
  constexpr int kDmDirectors = 40;
  constexpr int kDmTypes = 6;
  constexpr int kDmGroups = 60;
  constexpr int kDmLocations = 20;

  auto user_label = [](int u) { return "u" + std::to_string(u); };
  auto movie_label = [](int m) { return "m" + std::to_string(m); };

  std::vector<std::vector<int>> movie_types(kDmMovies + 1);
  for (int m = 1; m <= kDmMovies; ++m) {
    const int first = (m <= kDmTypes) ? m - 1 : static_cast<int>(bounded(rng, kDmTypes));
    movie_types[m].push_back(first);
    if (uniform01(rng) < 0.55) {
      const int second = static_cast<int>(bounded(rng, kDmTypes));
      if (second != first) movie_types[m].push_back(second);
    }
  }

  {
    auto out = open_out(directory / "movie_type.tsv");
    for (int m = 1; m <= kDmMovies; ++m) {
      for (int t : movie_types[m]) out << movie_label(m) << '\t' << "t" << (t + 1) << '\n';
    }
  }
  {
    auto out = open_out(directory / "movie_actor.tsv");
    for (int m = 1; m <= kDmMovies; ++m) {
      const int n = 2 + static_cast<int>(bounded(rng, 2));
      std::unordered_set<int> seen;
      for (int i = 0; i < n; ++i) {
        const int a = (m <= kDmActors && i == 0) ? m - 1
                                                 : static_cast<int>(bounded(rng, kDmActors));
        if (seen.insert(a).second) out << movie_label(m) << '\t' << "a" << (a + 1) << '\n';
      }
    }
  }
  {
    auto out = open_out(directory / "movie_director.tsv");
    for (int m = 1; m <= kDmMovies; ++m) {
      if (uniform01(rng) < 0.6) {
        const int d = (m <= kDmDirectors) ? m - 1 : static_cast<int>(bounded(rng, kDmDirectors));
        out << movie_label(m) << '\t' << "d" << (d + 1) << '\n';
      }
    }
  }
  {
    auto out = open_out(directory / "user_group.tsv");
    for (int u = 1; u <= kDmUsers; ++u) {
      const int n = 1 + static_cast<int>(bounded(rng, 4));
      std::unordered_set<int> seen;
      for (int i = 0; i < n; ++i) {
        const int g = (u <= kDmGroups && i == 0) ? u - 1 : static_cast<int>(bounded(rng, kDmGroups));
        if (seen.insert(g).second) out << user_label(u) << '\t' << "g" << (g + 1) << '\n';
      }
    }
  }
  {
    auto out = open_out(directory / "user_location.tsv");
    for (int u = 1; u <= kDmUsers; ++u) {
      if (uniform01(rng) < 0.85) {
        const int l = (u <= kDmLocations) ? u - 1 : static_cast<int>(bounded(rng, kDmLocations));
        out << user_label(u) << '\t' << "loc" << (l + 1) << '\n';
      }
    }
  }
  {
    auto out = open_out(directory / "user_friend.tsv");
    for (int i = 0; i < 40; ++i) {
      const int a = 1 + static_cast<int>(bounded(rng, kDmUsers));
      const int b = 1 + static_cast<int>(bounded(rng, kDmUsers));
      if (a != b) out << user_label(a) << '\t' << user_label(b) << '\n';
    }
  }

  // Ratings with a per-user preferred type; likes = rating >= 3.
  struct Row {
    int user, movie, value;
  };
  std::vector<Row> rows;
  std::unordered_set<std::uint64_t> used;
  for (int u = 1; u <= kDmUsers; ++u) {
    const int pref = static_cast<int>(bounded(rng, kDmTypes));
    const int n = 15 + static_cast<int>(bounded(rng, 26));
    int guard = 0;
    int added = 0;
    while (added < n && guard < 500) {
      const int m = 1 + static_cast<int>(bounded(rng, kDmMovies));
      const bool match =
          std::find(movie_types[m].begin(), movie_types[m].end(), pref) != movie_types[m].end();
      if (!match && uniform01(rng) < 0.5) {
        ++guard;
        continue;
      }
      if (!used.insert(pair_key(u, m)).second) {
        ++guard;
        continue;
      }
      const double z = uniform01(rng);
      const int value = match ? (z < 0.2 ? 3 : z < 0.7 ? 4 : 5)
                              : (z < 0.2 ? 1 : z < 0.45 ? 2 : z < 0.8 ? 3 : 4);
      rows.push_back({u, m, value});
      ++added;
      guard = 0;
    }
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return a.user != b.user ? a.user < b.user : a.movie < b.movie;
  });
  {
    auto out = open_out(directory / "ratings.tsv");
    for (const Row& r : rows) {
      out << user_label(r.user) << '\t' << movie_label(r.movie) << '\t' << r.value << '\n';
    }
  }
  {
    auto out = open_out(directory / "likes.tsv");
    for (const Row& r : rows) {
      if (r.value >= 3) out << user_label(r.user) << '\t' << movie_label(r.movie) << '\n';
    }
  }

  nlohmann::json manifest;
  manifest["dataset"] = "dm-fixture";
  auto rel = [](const char* name, const char* path, const char* sg, const char* tg) {
    nlohmann::json r;
    r["name"] = name;
    r["path"] = path;
    r["delimiter"] = "\t";
    r["source_group"] = sg;
    r["target_group"] = tg;
    r["source_column"] = 0;
    r["target_column"] = 1;
    return r;
  };
  manifest["relations"] = nlohmann::json::array();
  manifest["relations"].push_back(rel("Ac", "movie_actor.tsv", "movie", "actor"));
  manifest["relations"].push_back(rel("Di", "movie_director.tsv", "movie", "director"));
  manifest["relations"].push_back(rel("Ty", "movie_type.tsv", "movie", "type"));
  manifest["relations"].push_back(rel("Gr", "user_group.tsv", "user", "usergroup"));
  manifest["relations"].push_back(rel("Lo", "user_location.tsv", "user", "location"));
  {
    auto r = rel("rates", "ratings.tsv", "user", "movie");
    r["rating_column"] = 2;
    manifest["relations"].push_back(r);
  }
  manifest["relations"].push_back(rel("Fr", "user_friend.tsv", "user", "user"));
  manifest["relations"].push_back(rel("likes", "likes.tsv", "user", "movie"));
  {
    auto out = open_out(directory / "dataset.json");
    out << manifest.dump(2) << '\n';
  }
}

}  // namespace hinwalk::fixtures
