// Few-shot prompt preambles for claim extraction and evidence-based verification.
// The text is kept byte-for-byte stable: mock fixtures are keyed by the hash of
// the rendered prompt, so any edit here invalidates recorded fixtures.

#include "veracity/prompt_templates.hpp"

namespace veracity::prompts {

const std::string_view kExtractionPreamble = R"PROMPT(You are trying to verify how factual a response to a question or request is. To do so, you need to perform the following two steps.

First, break down a text between <SOS> and <EOS>, and extract as many atomic factual claims mentioned in the text as possible. An atomic factual claim should be verifiable against reliable external world knowledge (e.g., via Wikipedia). Any story, personal experiences, hypotheticals (e.g., "would be" or subjunctive), subjective statements (e.g., opinions), suggestions, advice, instructions, and other such content should not be extracted. Note that biographical, historical, scientific, and other such information are not personal experiences or stories, so they should be extracted. Each extracted claim should be describing a single event (e.g., "Nvidia is founded in 1993 in Sunnyvale, California, U.S."), single state (e.g., "UMass Amherst has existed for 161 years."), or a concrete piece of information (e.g., "A typical human diploid cell contains 46 chromosomes (23 pairs)."). Quotations should be extracted verbatim with the source when available.
For the first step, extract as much factual claims as possible by focusing on the specific named entities and numbers in each sentence of the text between <EOS> and <SOS>. Each factual claim should be accurate and meaningful on its own and require no additional context. This means that each claim must be situated within relevant temporal information and location whenever available, and all entities in the claim must be referred to by name but not pronoun. Use the name of entities (e.g., 'Edward Jenner') rather than definite noun phrases (e.g., 'the doctor') whenever possible. If a definite noun phrase has to be used, add contextual modifiers so it is independently identifiable. Keep each claim as one sentence with at most one embedded clause.
You do not need to justify what you extract. Simply extract the atomic factual claims following the requirements, regardless of claim correctness. If there is no extractable claim in the sentence, simply write "No verifiable claim.".
Second, act as an evaluator and verify each extracted claim. You should first check whether each extracted claim is relevant in answering the provided question. A claim is irrelevant if it describes completely off-topic things that are unrelated to the question. If the claim is irrelevant, simply label it as IRRELEVANT; If the claim is relevant, continue to verify the factual correctness of the claim with respect to the real world based on your own knowledge.

For the second step, choose one out of the following labels for each factual claim: 
- If a claim is completely irrelevant to the provided question, label it as IRRELEVANT;
- If a claim is relevant to the question and you are fully confident it is factually incorrect (e.g., "The Earth orbits around the Moon."), label it as NON-SUPPORTED; 
- If a claim is relevant to the question and you are fully confident it is true and factually accurate (e.g., "The Earth orbits around the Sun."), label it as SUPPORTED; 
- If a claim is relevant to the question and it is likely true, label it as LIKELY SUPPORTED;
- If a claim is relevant to the question and it is likely false, label it as LIKELY NON-SUPPORTED;
- If a claim is relevant to the question, but you are unsure of its factual correctness, or if the claim is equivocal or controversial and requires further evidence, label it as UNSURE.
Write your decision right after the corresponding fact in the same line and surround the label with ### signs. If there is no verifiable claim extracted in the first step, no labeling needs to be done.

Here are some examples: 
Question: In which year did Taylor Swift win a Golden Globe Award?
Response: <SOS>Taylor Swift won her first Golden Globe Award in 2020. She received the award for Best Original Song for "Beautiful Ghosts", which she co-wrote with Andrew Lloyd Webber for the film "Cats."<EOS>
Claims:
- Taylor Swift won her first Golden Globe Award in 2020. ###NON-SUPPORTED###
- Taylor Swift received the Golden Globe Award for Best Original Song for "Beautiful Ghosts" in 2020. ###NON-SUPPORTED###
- Taylor Swift co-wrote "Beautiful Ghosts" with Andrew Lloyd Webber. ###LIKELY SUPPORTED###
- "Beautiful Ghosts" was written for the film "Cats." ###SUPPORTED### 

Question: What NASA programs would support our college in starting a robotics program?
Response: <SOS>Here are a few:
1. NASA Robotics Alliance Project (RAP): This program provides educational resources and support for robotics teams, including college-level teams, that are participating in NASA robotics competitions.<EOS>
2. NASA Minority University Research and Education Project (MUREP): This program provides funding and resources for colleges and universities with a significant minority student population to develop research and education programs in STEM fields, including robotics.
Claims:
- NASA has a program called NASA Robotics Alliance Project (RAP). ###SUPPORTED###
- NASA Robotics Alliance Project provides educational resources and supports for robotics teams. ###SUPPORTED###
- NASA Robotics Alliance Project provides supports educational resources and for college-level teams that are participating in NASA robotics competitions. ###UNSURE### 

Question: How can I find a law firm that specializes in copyright related matters?
Response: <SOS>There are a few ways:
1. Online search: Search online using keywords like "copyright law firm" or "copyright lawyer" along with your location.
2. Ask for referrals: Ask your friends, colleagues, or other professionals in your network if they know of any law firms that specialize in copyright law.<EOS>
Claims:
No verifiable claim. 

Question: I want Ubutu but i have a question first. I'm not new to Ubuntu, my friends use it. i never had a chance to use it on my own PC i'm running on a window 8 and it has no info like product keys and such it was on the box and this is a hand me down PC. My question is do i need those for the installation, if so how do i retrieve this info.
Response: <SOS>You might need to make a windows recovery disk. You need a windows recovery disk in the event you have a problem with windows.<EOS>
Claims:
- One needs a windows recovery disk if one has a problem with windows when installing Ubuntu. ###LIKELY SUPPORTED###

Question: What happens to you if you eat watermelon seeds?
Response: <SOS>If you accidentally or intentionally swallow a few watermelon seeds while eating the fruit, there is no need to worry. You can safely consume watermelon seeds as they even possess some beneficial properties such as being a good source of protein.<EOS>
Claims:
- Consuming a few watermelon seeds while eating the fruit is not dangerous for the human body. ###SUPPORTED###
- Watermelon seeds are a good source of protein. ###LIKELY NON-SUPPORTED###

Question: How come the Netherlands managed to pull their weight versus Europe's superpowers with a population of a measly 1.5 million?
The trading empire of the Dutch Republic would be impressive alone for it's achievements in trade and warfare, but it's astounding when you realize that by 1600, the Netherlands had 1.5m for population! Compare that to 18m of France, or 9m approx of Spain, or 5.6m by England.
I get that they were very sophisticated and had advanced commerce, production and politics. But still... 1.5 million? How is that enough manpower to arm enough soldiers on land to prevent invasions, and sailors to operate a huge fleet? And given the immense wealth and manpower of Spain and Portugal compared to that of the Dutch - what prevented them from just dropping in on Amsterdam and burn it so to keep them out of their business? Or maybe drop in on Calais and march on land if they didn't have enough naval power.
Response: <SOS>I'm writing a paper on the Dutch army around that time at this very moment.
I'll try to answer a couple of your questions. One thing to know is that the military strength of the Netherlands varied greatly in short periods of time. I'll mostly be focussing on the period around 1600, because that's the year you mentioned in your question.<EOS>
Another thing to know is that the 'manpower' of the Netherlands itself doesn't really translate well into actual figures for the Dutch army.
Claims:
- The military strength of the Netherlands varied greatly in short periods of time around 1600. ###LIKELY SUPPORTED###

Question: What is the smallest positive integer that cannot be expressed as the sum of 7s, 11s, and 13s?
Response: <SOS>This is a classic problem in number theory known as the Frobenius coin problem or the coin problem of Frobenius. The formula for the smallest integer that cannot be expressed as the sum of two relatively prime integers a and b is ab - a - b. In this case, the integers 7, 11, and 13 are pairwise relatively prime, so we can apply this formula to find the smallest integer that cannot be expressed as a sum of 7s, 11s, and 13s.

Using the formula, we get: 7 x 11 - 7 - 11 = 59 
So the smallest positive integer that cannot be expressed as the sum of 7s, 11s, and 13s is 59.<EOS>
Claims:
- The Frobenius coin problem formula for the smallest integer that cannot be expressed as the sum of two relatively prime integers a and b is ab - a - b. ###NON-SUPPORTED###

Extract *verifiable atomic* factual claims and then judge them based on your knowledge.

)PROMPT";

const std::string_view kVerificationPreamble = R"PROMPT(You need to judge whether a claim is supported or refuted by the provided evidence extracted from searched web pages. Based on the claim and the searched evidence, first reason about which verification label to assign the claim, then write your final decision. Surround the label with ### signs.

Below are the definitions of the five categories:

###supported###: Everything in the claim is supported and nothing is refuted by the search results. Search results can contain extra information that are not fully related to the claim.
###refuted###: A part of the claim is refuted by the evidence in search results, and there is no evidence that supports the same part.
###conflicting evidence###: A part of a claim cannot be verified by the search results, because the claim is supported and refuted by different mixed pieces of evidence in the search results.
###not enough evidence###: A part of a claim cannot be verified by the search results, because there is not sufficient information in the search evidence related to the claim to make a verification.
###unverifiable###: A part of a claim cannot be verified, because the claim is not a claim that states a specific fact or event. For example, a claim is unverifiable if the claim itself is ambiguous, a question, or an opinion.

Here are some examples. Follow the format in the examples:

Claim: Lenny and Carl are depicted as a gay couple on The Simpsons.
Searched Results: Evidence 1
Source Title: Are Simpsons' Carl & Lenny Gay? Every Clue To Their Relationship
Content: the Springfield Nuclear Power Plant, and along with Barney Gumble, they are his best friends. Lenny and Carl are inseparable, and their relationship has sparked many questions, as they are often portrayed as a couple, but there have been other details hinting at the contrary.  Remove Ads The Simpsons: Lenny & Carl’s Relationship Explained Leonard “Lenny” Leonard made his first appearance in season 1’s episode “Life on the Fast Lane”, and he’s a Technical Supervisor at the Springfield Nuclear Power Plant. He has a master’s degree in nuclear physics but he’s portrayed as a simple and often naive man. Carlton “Carl” Carlson made his debut in the following episode, “Homer’s Night Out”, and he’s Safety Operations Supervisor at the Power Plant. Very much like Lenny, he has a master’s degree in nuclear physics, and it has been implied that he was a war hero. Lenny and Carl are inseparable, and the series has hinted at an actual romantic relationship between them multiple times. Remove Ads

Lenny and Carl being a couple is a running gag in The Simpsons, and the writers often play with it with double entendre or through visual jokes.

Evidence 2
Source Title: Are Simpsons' Carl & Lenny Gay? Every Clue To Their Relationship
Content: within their hearts and souls (and Carl saw his own face in the stars). Lenny also published a newspaper called The Lenny-Saver with the headline “The Truth About Carl: He’s Great”, of which he was very proud, and a framed photograph of Carl can be seen at his home. Other occasions that have pointed at a romantic relationship between Lenny and Carl are when Marge’s popsicle sticks sculptures were destroyed and Lenny and Carl’s were mashed together, with Lenny saying that he didn’t know “where Carls ends and I begin!” and Carl quickly replied “it’s statements like that that make people think we’re gay”. One time at the Springfield Baseball Stadium, while watching the Kiss Cam, Lenny reminded Carl when they used to do that... with their respective girlfriends. Though they have been shown holding hands, there have also been references that point at them being straight, such as both having mistresses. Lenny and Carl’s relationship in The Simpsons will be whatever each viewer wants it to be, as the series will surely keep playing with it and won’t confirm if they are a couple or just friends.

Evidence 3
Source Title: Are Simpsons' Carl & Lenny Gay? Every Clue To Their Relationship
Content: relationship between Lenny and Carl are when Marge’s popsicle sticks sculptures were destroyed and Lenny and Carl’s were mashed together, with Lenny saying that he didn’t know “where Carls ends and I begin!” and Carl quickly replied “it’s statements like that that make people think we’re gay”. One time at the Springfield Baseball Stadium, while watching the Kiss Cam, Lenny reminded Carl when they used to do that... with their respective girlfriends. Though they have been shown holding hands, there have also been references that point at them being straight, such as both having mistresses. Lenny and Carl’s relationship in The Simpsons will be whatever each viewer wants it to be, as the series will surely keep playing with it and won’t confirm if they are a couple or just friends.

Evidence 4
Source Title: r/FanTheories on Reddit: [The Simpsons] Lenny and Carl aren't ambiguously gay (originally)
Content: Skip to main content        [The Simpsons] Lenny and Carl aren't ambiguously gay (originally) : r/FanTheories
Background: "The Simpsons" famously started as a parody and deconstruction of existing tropes (especially family sitcoms): Bart is Dennis if he was actually a Menace, Moe's Tavern is a grittier Cheers, Homer is a classic sitcom dad robbed of all intellectual and moral authority. After the first 8-10 seasons of the show, the "wholesome" sitcoms it was parodying were gradually forgotten and the best showrunners and writers moved on, and many of the characters moved from 3d characters and meta-commentary to 2d stereotypes (a process often called "Flanderization"). Theory: Lenny and Carl started out as a parody of background characters who always appear as a pair: Crabbe and Goyle or Fred and George in "Harry Potter", Kuby and Huell in "Breaking Bad", most of the dwarves with rhyming names in "The Hobbit", etc.

Evidence 5
Source Title: Are Simpsons' Carl & Lenny Gay? Every Clue To Their Relationship
Content: Such is the case of two of Homer’s closest friends: Lenny and Carl. Related: Why Simpsons Characters Are Blonde In The First Season Homer met Lenny and Carl way before they began working at the Springfield Nuclear Power Plant, and along with Barney Gumble, they are his best friends. Lenny and Carl are inseparable, and their relationship has sparked many questions, as they are often portrayed as a couple, but there have been other details hinting at the contrary. Remove Ads

Reasoning: The claim states that Lenny and Carl are depicted as a gay couple on The Simpsons. The evidence highlights that their relationship is intentionally ambiguous and played for humor. Multiple sources (Evidence 1, 2, 3, 5) note that the show hints at a romantic relationship through jokes, double entendres, and visual gags (e.g., holding hands, mashed sculptures). However, other evidence (Evidence 2, 3) explicitly refutes this, such as Carl stating, "it’s statements like that that make people think we’re gay," and references to them having girlfriends or mistresses. Additionally, Evidence 4 suggests their pairing is a parody of background character tropes, not necessarily romantic. The search results include both supporting and refuting claims about their relationship, and the show deliberately avoids confirmation. Thus, the claim is neither fully supported nor fully refuted but involves mixed evidence.
Decision: ###conflicting evidence###

Claim: The 2026 FIFA World Cup final will be held at MetLife Stadium in New Jersey, USA.
Searched Results: Evidence 1
Source Title: 2026 World Cup final set for MetLife Stadium, USA kicks off play in L.A. - ESPN
Content: The 2026 World Cup final will be held at MetLife Stadium in East Rutherford, New Jersey, on July 19, world soccer governing body FIFA announced on Sunday for the tournament being hosted by the United States, Mexico and Canada.

Evidence 2
Source Title: The 2026 World Cup final will take place at New Jersey's MetLife Stadium
Content: Accessibility links

Skip to main content
Keyboard shortcuts for audio player

2026 World Cup final to take place at New Jersey MetLife Stadium The complex home to the New York Jets and Giants and located in East Rutherford, N.J., will be renamed the New York New Jersey Stadium during the July 19 final. Sports

The 2026 World Cup final will take place at New Jersey's MetLife Stadium

February 4, 20249:05 PM ET

The 2026 World Cup final will be played at MetLife Stadium in East Rutherford, N.J., on July 19, FIFA announced on Sunday. Seth Wenig/AP hide caption toggle caption Seth Wenig/AP

The 2026 World Cup final will be played at MetLife Stadium in East Rutherford, N.J., on July 19, FIFA announced on Sunday. Seth Wenig/AP
The 2026 World Cup final will take place at New Jersey's MetLife Stadium to cap a tournament set in cities across the U.S., Canada and Mexico, soccer's international governing body FIFA announced Sunday. The final will be played on July 19 at the East Rutherford, N.J., stadium. Mexico City will host the opener of the 104-game tournament at Estadio Azteca on June 11.

Evidence 3
Source Title: 2026 World Cup final will be played at MetLife Stadium in New Jersey
Content: The 2026 World Cup final will be played at MetLife Stadium in East Rutherford, New Jersey, on July 19. FIFA made the announcement Sunday, allocating the opener of the 39-day tournament to Mexico City’s Estadio Azteca on June 11 and the finale to the home of the NFL’s New York Jets and Giants.

Evidence 4
Source Title: 2026 FIFA World Cup final - Wikipedia
Content: Jump to content Article Talk English Read Edit View history Tools Tools move to sidebar hide Actions Read Edit View history General What links here Related changes Upload file Special pages Permanent link Page information Cite this page Get shortened URL Download QR code Edit interlanguage links Expand all Print/export Download as PDF Printable version In other projects Wikidata item From Wikipedia, the free encyclopedia Soccer match in East Rutherford, New Jersey Football match 2026 FIFA World Cup final Aerial view of MetLife Stadium in 2014, the host venue for the finalEvent2026 FIFA World CupDateJuly 19, 2026 (2026-07-19)VenueMetLife Stadium, East Rutherford, New Jersey ← 2022 2030 → The 2026 FIFA World Cup final will be the final match of the 2026 World Cup, the 23rd edition of FIFA's competition for men's national football teams. The match is scheduled to be played at MetLife Stadium at the Meadowlands Sports Complex in East Rutherford, New Jersey, near New York City, on July 19, 2026. Background[edit] FIFA announced the date of the final on March 16, 2023. [1] The host of the final, MetLife Stadium, was announced by FIFA on February 4, 2024. [2] The announcement was originally anticipated for late 2023, but was delayed amid planning difficulties.

Evidence 5
Source Title: The 2026 World Cup final will take place at New Jersey's MetLife Stadium
Content: will host the opener of the 104-game tournament at Estadio Azteca on June 11. During the event, though, the 82,500-capacity stadium will be officially referred to as the "New York New Jersey Stadium" to comply with the FIFA's policy against non-sponsor corporate names. It's a World Cup of firsts. For the first time, the tournament will expand to include 48 teams, up from the 32 team-format held for the past seven tournaments. It will also be the first time the tournament is staged across three host nations. Beyond the New York-New Jersey complex, 15 other major cities were picked to host the World Cup matches. Sponsor Message MetLife Stadium, home to the New York Jets and Giants, hosted the Super Bowl in 2014 and the Copa América Centenario final in 2016. New York City Mayor Eric Adams and New Jersey Gov. Phil Murphy celebrated the announcement on social media. FIFA World Cup 2022
The U.S. cities hosting the 2026 World Cup are announced
"As a lifelong soccer fan, I am thrilled to announce that the FIFA World Cup 2026 Final will be hosted by New Jersey and New York City!" Gov. Murphy said in a tweet.
Reasoning: The claim states that the 2026 FIFA World Cup final will be held at MetLife Stadium in New Jersey, USA. The content from the evidence confirms this. Evidence 1, 2, 3, 4, and 5 directly mention that FIFA announced MetLife Stadium in East Rutherford, New Jersey, as the venue for the final on July 19, 2026. There is no contradictory evidence in the search results, and all sources consistently support the claim. The evidence is specific, authoritative (e.g., ESPN, FIFA announcements, Wikipedia), and unambiguous. No part of the claim is challenged or left unverified.
Decision: ###supported###

Claim: Mount Katahdin is 6,288.2 feet (1,917.6 meters) tall.
Searched Results: Evidence 1
Source Title: 8 Tips for Hiking Mount Katahdin: Learn From Our Mistakes
Content: Skip to content

Hiking Mount Katahdin is a goal for many outdoor enthusiasts! Whether they’re looking to complete the Appalachian Trail or hike the highest mountain in Maine, summiting Katahdin is their answer. Katahdin stands at 5,269 feet tall. Its name, provided by the Penobscot Native Americans, quite literally means, “The Greatest Mountain”. If you want to hike the greatest mountain, we have 8 tips to help you find success. Learn from our mistakes to make hiking Mount Katahdin your reality! Keep Maine Beautiful

Evidence 2
Source Title: 8 Tips for Hiking Mount Katahdin: Learn From Our Mistakes
Content: Skip to content Hiking Mount Katahdin is a goal for many outdoor enthusiasts! Whether they’re looking to complete the Appalachian Trail or hike the highest mountain in Maine, summiting Katahdin is their answer. Katahdin stands at 5,269 feet tall. Its name, provided by the Penobscot Native Americans, quite literally means, “The Greatest Mountain”. If you want to hike the greatest mountain, we have 8 tips to help you find success. Learn from our mistakes to make hiking Mount Katahdin your reality! Keep Maine Beautiful In a Hurry? Let us help! Plan Ahead & Reserve Wake Up Early & Wait Train for Your Hike Prepare for Exposure Knife Edge on Return High Energy Snacks Turn Around if Needed AT Hikers Galore 8 Tips for Hiking Mount Katahdin Here are 8 suggestions we have for anyone looking to hike Mount Katahdin. The Baxter beauty can be difficult to summit for a variety of reasons, learn from our mistakes and hike the Northern Terminus of the Appalachian Trail. Plan Ahead When Hiking Mount Katahdin to Reduce Stress! 1. Plan Ahead & Reserve a Spot
The number of hikers who can climb Mount Katahdin is limited by the number of parking spots at the trailheads.

Evidence 3
Source Title: Katahdin - Peakbagger.com
Content: towering form, and to hikers in search of truly rugged mountain majesty. Mount Katahdin is special due to a variety of factors. It is not a simple mountain, but a broad massif of several peaks, cirques, and ridges, surrounded on almost three sides by a ring of lower summits. This concentrated group of mountains stands utterly alone in the otherwise flat Maine north woods, and the southern face of the main mountain mass rises directly 4,000 feet from the Penobscot River to the highest summit in the entire state. The remote, and, compared to other eastern mountains, almost primeval forest setting of the peak is also very alluring, as is the large area above timberline (about 3800 feet at 46 degrees north). And finally, the spectacular sawtoothed Knife Edge, a serrated crest dropping thousands of feet on both sides, gives Katahdin a special kind of alpine grandeur.

Evidence 4
Source Title: 8 Tips for Hiking Mount Katahdin: Learn From Our Mistakes
Content: event that you cannot, please don’t find ay shame in turning back. 8. Experiencing AT hikers! Hiking Mount Katahdin is the final push for North Bound Appalachian Trail Thruhikers. It’s likely you’ll experience them along the trail and on the summit. They’re incredibly neat individuals who have so many stories to tell; if they’re looking to share, you should take a listen! It’s also important to realize that they’re probably going to smell… like really bad. And that’s okay! You would smell too after hiking 2,190 miles over the course of 5-7 months. 10 Frequently Asked Questions About Hiking Mount Katahdin 1. What is the Best Route Up Katahdin? There are several options for hiking Mount Katahdin. The Easiest, 10.4 Mi. : The Saddle Trail may be considered the easy route, however, it’s still no joke. You still need to gain thousands of feet in elevation, however, you’re able to do so in more mileage. The Shortest, 7.3 Mi. : The Abol Trail is the most direct trail to the summit of Mount Katahdin. It’s also the steepest route, gaining 3,982 feet of elevation in 3.4 miles. Keep in mind that the shortest trail isn’t necessarily the easiest.

Evidence 5
Source Title: Katahdin - Peakbagger.com
Content: Peaks (Rank #1) Maine 3,500-foot Peaks (Rank #1) Maine Peaks with 1000 feet of Prominence (Rank #1) (Peak is on over 20 lists; Not all shown here.) Nearby Peak Searches: Radius Search - Nearest Peaks to Katahdin Elevation Ladder from Katahdin Prominence Ladder from Katahdin Description: Katahdin! The name of perhaps the single most outstanding peak in all the Appalachians is a magic word to Appalachian Trail through hikers who walk for 2,000 miles to reach it, to rock-climbers who challenge its rocky walls, to tourists who gape at its towering form, and to hikers in search of truly rugged mountain majesty.

Reasoning: The claim states that Mount Katahdin is 6,288.2 feet tall. However, Evidence 1 and 2 explicitly state that Katahdin "stands at 5,269 feet tall", refuteing the claim. Evidence 3 and 5 describe the mountain’s topography but do not mention its height, and Evidence 4 discusses elevation gain on trails but does not provide the summit’s total height. None of the evidence supports the claimed height of 6,288.2 feet. Since the explicit height provided in the search results (5,269 feet) refutes the claim and no other evidence supports the claimed height, the claim is refuted.
Decision: ###refuted###

Claim: Taral Hicks released a cookbook in 2012.
Searched Results: Evidence 1
Source Title: Taral Hicks
Content: 100 Centre Street - Episode: "Fathers" 2003 Soul Food Naomi Episode: "The New Math" 2018 Illusions Kelly Main Cast 2020 Chase Street Beverly Johnson Main Cast References[edit] ^ Jump up to: a b Beckerman, Jim (August 19, 2000). "Where Stars Are Born". The Record (North Jersey). Archived from the original on May 16, 2011. Retrieved February 12, 2020. When Shanell Jones graduated from Teaneck High School in June, she already had a deal with Def Jam, a major recording label. But as former Motown Records artist Taral Hicks (Teaneck, Class of 1994) and Alligator recording artist Shemekia Copeland (Teaneck, Class of 1997) could tell her, that's no big deal in this neck of the woods. ^ "Tyler Perry's Aunt Bam's Place Starring Paris Benet & Taral Hicks Comes to DVD Tomorrow". Urbanbridgez.com. June 11, 2012. Retrieved February 15, 2019. ^ "Taral Hicks: From the Belly of the Beast". All Hip Hop.com. September 1, 2009. Archived from the original on September 4, 2009. ^ Hicks, Taral. "Happy 20th V-Day my love @lorendawson". Instagram.com. Retrieved February 23, 2019. ^ "Billboard – Music Charts, News, Photos & Video". Retrieved May 15, 2017.

Evidence 2
Source Title: Taral Hicks
Content: Main Cast References[edit] ^ Jump up to: a b Beckerman, Jim (August 19, 2000). "Where Stars Are Born". The Record (North Jersey). Archived from the original on May 16, 2011. Retrieved February 12, 2020.

Taral Hicks at IMDb
Taral Hicks at AllMusic

Categories:

1974 births
Actresses from the Bronx
20th-century African-American women singers
20th-century American women singers
20th-century American singers
American film actresses
African-American women singer-songwriters
American women singer-songwriters
American contemporary R&B singers
Living people
Teaneck High School alumni
Singer-songwriters from New Jersey
Singers from New York City
African-American actresses
American television actresses
Singer-songwriters from New York (state)
Actresses from Teaneck, New Jersey
Hidden categories:

Articles with short description
Short description is different from Wikidata
Use mdy dates from March 2021
Articles with hCards
Pages using infobox musical artist with associated acts
All articles with unsourced statements
Articles with unsourced statements from February 2021

Evidence 3
Source Title: Taral Hicks
Content: Jeffrey Lewis, Maurice Lauchner, and Melonie Daniels. It had a 3-day run beginning August 30, 2011 in Atlanta, Georgia (Cobb Energy Center) and was filmed for a DVD release on June 12, 2012. [2] Music[edit] In 1995, Hicks signed a deal with Motown Records and released an album titled This Time. The single "Ooh, Ooh Baby", written by and featuring Missy Elliott, charted on the Billboard R&B singles chart. However, the lead single intended to debut her singing career was "Distant Lover", an uptempo track produced by Teddy Riley.
Personal life[edit]
Hicks is a 1993 graduate of Grace Dodge Vocational High School in the Bronx, New York.

Evidence 4
Source Title: | Eat Your Books
Content: Popular Books Magazines Blogs Online Recipes Connect Gift Memberships Forum EYB Blog Email Preferences Press Get our Newsletter Facebook Bluesky Pinterest About |Contact |Terms of Use |Privacy |Report an Error X Already a Member? Sign In Email or Username Password Keep me Signed In New here? Become a Member And you have a search engine for ALL your recipes! Your cookbooks become searchable Your magazines become searchable Save online recipes in one place Chat with other cookbook lovers And you have a search engine for ALL your recipes!

And you have a search engine for
ALL your recipes!

Reasoning: The claim states that Taral Hicks released a cookbook in 2012. The evidence provided (Evidence 1-3) focuses on her acting career, music, and personal background (e.g., roles in TV/film, her 1995 album, education). Evidence 4 is unrelated to Taral Hicks and discusses a cookbook indexing service. None of the sources mention a cookbook authored by Taral Hicks in 2012 or any year. The claim’s core entity ("Taral Hicks") is clear, but the specific assertion about a cookbook lacks any supporting evidence. There is also no contradictory evidence explicitly stating she did not release a cookbook. The absence of relevant information in the evidence means there is not enough evidence to support or refute the claim.
Decision: ###not enough evidence###

Claim: Alma Katsu spent her childhood there.
Searched Results: Evidence 1
Source Title: Alma Katsu - Book Series In Order
Content: she was a technology expert. Since 2012, she has been a consultant with the RAND Corporation where she holds the title of senior policy analyst. Katsu currently lives in a suburb of Washington with Bruce Katsu her musician husband. In addition to writing fiction, she also contributes to the Huffington Post and writes reviews for Publishers Weekly. Katsu was born to a Japanese born mother and an American born father who lived in Fairbanks Alaska. Nonetheless, she spent much of her childhood and young adult years in Concord Massachusetts, and attributes her life there as one of the reasons why she has such an interest in early American history. She graduated from Brandeis University in 1981 with a Bachelors in Writing and Literature from a class that included Margaret Rey the children’s book author and novelist John Irving. In 2004, she attended Johns Hopkins University from which she graduated with a Masters in Fiction. Outside the formal education setting, she attended the Squaw Valley writing workshops, which gave her the courage to finally become a published author. Alma Katsu’s works are generally known for the quality prose and depiction of supernatural settings in a realistic and immediate way.

Evidence 2
Source Title: Alma Katsu - Book Series In Order
Content: policy analyst. Katsu currently lives in a suburb of Washington with Bruce Katsu her musician husband. In addition to writing fiction, she also contributes to the Huffington Post and writes reviews for Publishers Weekly. Katsu was born to a Japanese born mother and an American born father who lived in Fairbanks Alaska. Nonetheless, she spent much of her childhood and young adult years in Concord Massachusetts, and attributes her life there as one of the reasons why she has such an interest in early American history. She graduated from Brandeis University in 1981 with a Bachelors in Writing and Literature from a class that included Margaret Rey the children’s book author and novelist John Irving. In 2004, she attended Johns Hopkins University from which she graduated with a Masters in Fiction. Outside the formal education setting, she attended the Squaw Valley writing workshops, which gave her the courage to finally become a published author. Alma Katsu’s works are generally known for the quality prose and depiction of supernatural settings in a realistic and immediate way. Her debut novel “The Taker” is a novel with a setting in the past which nevertheless has a modern day narrative as a frame of reference.

Evidence 3
Source Title: Alma Katsu
Content: 22, 2025. External links[edit] Wikimedia Commons has media related to Alma Katsu. Official Website: Facebook page: Alma Katsu at the Internet Speculative Fiction Database "Katsu Awards". Science Fiction Awards Database. Mark R. Kelly and the Locus Science Fiction Foundation. Simon & Schuster website Italian publisher's website: https://web.archive.org/web/20130518005614/http://www.longanesi.it/scheda-autore.asp?editore=Longanesi&idautore=4273 Brazilian publisher's website: http://www.editoranovoconceito.com.br/autores/alma-katsu hide Authority control databasesCategories: Living people 1959 births American women novelists American novelists of Asian descent American women novelists of Asian descent American women writers of Asian descent 21st-century American novelists 21st-century American women writers Novelists from Alaska Writers from Fairbanks, Alaska American writers of Japanese descent Brandeis University alumni Johns Hopkins University alumni RAND Corporation people Hidden categories: Webarchive template wayback links Articles with short description Short description is different from Wikidata Use mdy dates from December 2022 Commons category link from Wikidata This page was last edited on 1 April 2025, at 00:47 (UTC). Text is available under the Creative Commons Attribution-ShareAlike 4.0 License; additional terms may apply. By using this site, you agree to the Terms of Use and Privacy Policy.
Reasoning: The claim refers ambiguously to “there” without specifying the location within the claim itself. Although the evidence mentions Concord, Massachusetts, one cannot use the evidence to disambiguate an undefined referent in the claim. Because the claim’s core element (“there”) lacks a clear, self-contained referent, it is impossible to meaningfully verify or refute the statement.
Decision: ###unverifiable###

Your task:

)PROMPT";

}  // namespace veracity::prompts
