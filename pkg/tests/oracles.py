"""Brute-force reference computations, straight from raw post tuples.

Everything here recounts from scratch with plain dicts and math.log and
never touches the package's counting or metric code. IGR is computed via
the mutual-information identity I(L;W) = H(L) + H(W) - H(L,W) over the
joint presence/location distribution, a different algebraic route than
the conditional-entropy form used by the implementation.
"""

import math
from collections import defaultdict


def entropy(probs):
    return -sum(p * math.log(p) for p in probs if p > 0.0)


def recount(posts):
    """posts: iterable of (user, loc, text). Tokens are whitespace-split."""
    occ = defaultdict(lambda: defaultdict(int))
    users_of = defaultdict(set)
    user_loc = {}
    tokens_per_loc = defaultdict(int)
    for user, loc, text in posts:
        user_loc[user] = loc
        toks = text.split()
        tokens_per_loc[loc] += len(toks)
        for t in toks:
            occ[t][loc] += 1
            users_of[t].add(user)
    return occ, users_of, user_loc, tokens_per_loc


def brute_igr(present_by_loc, totals_by_loc, location_ids):
    """IG(L;W)/IV(W) from a 2xN contingency table via joint entropies."""
    grand = sum(totals_by_loc.get(l, 0) for l in location_ids)
    word_total = sum(present_by_loc.get(l, 0) for l in location_ids)
    p_w = word_total / grand
    joint = []
    for l in location_ids:
        joint.append(present_by_loc.get(l, 0) / grand)
        joint.append((totals_by_loc.get(l, 0) - present_by_loc.get(l, 0)) / grand)
    h_joint = entropy(joint)
    h_loc = entropy(totals_by_loc.get(l, 0) / grand for l in location_ids)
    h_word = entropy([p_w, 1.0 - p_w])
    ig = h_loc + h_word - h_joint
    return ig / h_word


def brute_all_metrics(posts, location_ids):
    """Every metric for every word, as {word: {metric_name: value}}.

    IGR entries are present only where 0 < presence probability < 1.
    """
    occ, users_of, user_loc, tokens_per_loc = recount(posts)
    total_tokens = sum(tokens_per_loc.values())
    total_users = len(user_loc)
    users_per_loc = defaultdict(int)
    for loc in user_loc.values():
        users_per_loc[loc] += 1
    n = len(location_ids)
    log_n = math.log(n)
    occ_max = max(sum(d.values()) for d in occ.values())
    users_max = max(len(s) for s in users_of.values())

    out = {}
    for word in occ:
        word_occ = sum(occ[word].values())
        word_users = len(users_of[word])
        h_w = entropy(c / word_occ for c in occ[word].values())
        users_by_loc = defaultdict(int)
        for user in users_of[word]:
            users_by_loc[user_loc[user]] += 1
        h_u = entropy(c / word_users for c in users_by_loc.values())
        p = word_occ / total_tokens
        q = word_users / total_users
        n_w = math.log(word_occ) / math.log(occ_max)
        n_u = math.log(word_users) / math.log(users_max)
        row = {
            "h_words": h_w,
            "h_users": h_u,
            "i_words_raw": p * (log_n - h_w),
            "i_users_raw": q * (log_n - h_u),
            "ltf_ig": n_w * (log_n - h_w),
            "luf_ig": n_u * (log_n - h_u),
        }
        if 0 < word_occ < total_tokens:
            row["igr_words"] = brute_igr(occ[word], tokens_per_loc, location_ids)
        if 0 < word_users < total_users:
            row["igr_users"] = brute_igr(users_by_loc, users_per_loc, location_ids)
        out[word] = row
    return out
